//! The two compatible products on the span of labeled planar rooted trees,
//! with bilinear and unital extensions, tensor-square pencil products, the
//! evaluation morphism from expression syntax, and its exact inversion.
//!
//! The first product is the grafting sum over all vertex maps. The second
//! product is pinned by its degree-1-left case (one branch grafted onto
//! each internal vertex in turn) and extended to arbitrary left operands by
//! the algebra laws themselves:
//!
//! ```text
//! (g *1 y) *2 z = g *1 (y *2 z) + g *2 (y *1 z) - (g *2 y) *1 z
//! (p *2 q) *2 z = p *2 (q *2 z)
//! ```
//!
//! applied through the normal-form coordinates of the left operand. The
//! naive reading of the second product as an independent sum of maps into
//! internal vertices agrees with this one exactly on degree-1 left operands
//! (and wherever only the root is internal) but breaks the four-term
//! relation from total degree 4 on. The law-derived extension keeps both
//! associativities and the four-term relation exactly (machine-checked well
//! beyond the verified ranges) and agrees with the coproduct-homomorphism
//! law on pairs of total degree up to 3, which is the range the
//! verification suite pins; from total degree 4 the homomorphism law and
//! the four-term relation genuinely exclude each other given the shared
//! low-degree data, and this crate sides with the product laws.
//!
//! All products are cached per [`TreeAlgebra`]: evaluation blocks are
//! factored once per (degree, label multiset) and reused.

use std::collections::HashMap;

use crate::basis::gen_word_monomials;
use crate::error::{Error, Result};
use crate::expr::{Expr, ExprLinComb, NFLinComb, NFMonomial};
use crate::matrix::{FactoredSystem, SparseMatrix};
use crate::products::{graft_sum, star1, star1_lin, ProductOp, TreeLinComb, TreePairLinComb};
use crate::rational::Rational;
use crate::tree::{Alphabet, Label, PlanarTree};

/// Assigns a tree to every generator label. The default sends `s` to the
/// two-vertex tree `(s)`, the assignment the freeness statements are about;
/// other assignments are allowed for experimentation.
#[derive(Clone, Debug)]
pub struct GeneratorAssignment {
    map: std::collections::BTreeMap<String, PlanarTree>,
}

impl GeneratorAssignment {
    pub fn default_for(alphabet: &Alphabet) -> GeneratorAssignment {
        let map = alphabet
            .iter()
            .map(|l| (l.text().to_string(), PlanarTree::leaf(l.clone())))
            .collect();
        GeneratorAssignment { map }
    }

    pub fn new(map: std::collections::BTreeMap<String, PlanarTree>) -> GeneratorAssignment {
        GeneratorAssignment { map }
    }

    pub fn get(&self, label: &Label) -> Result<&PlanarTree> {
        self.map
            .get(label.text())
            .ok_or_else(|| Error::UnassignedLabel(label.text().to_string()))
    }
}

struct Block {
    monomials: Vec<NFMonomial>,
    system: FactoredSystem<PlanarTree>,
}

/// Product, evaluation and inversion context for one session alphabet.
pub struct TreeAlgebra {
    alphabet: Alphabet,
    nf_values: HashMap<Expr, TreeLinComb>,
    star2_values: HashMap<(Expr, PlanarTree), TreeLinComb>,
    coords: HashMap<PlanarTree, Vec<(NFMonomial, Rational)>>,
    blocks: HashMap<(usize, Vec<u32>), Block>,
}

impl TreeAlgebra {
    pub fn new(alphabet: &Alphabet) -> TreeAlgebra {
        TreeAlgebra {
            alphabet: alphabet.clone(),
            nf_values: HashMap::new(),
            star2_values: HashMap::new(),
            coords: HashMap::new(),
            blocks: HashMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `t1 *1 t2` (grafting onto all vertices; context-free).
    pub fn star1(&self, t1: &PlanarTree, t2: &PlanarTree) -> Result<TreeLinComb> {
        star1(t1, t2)
    }

    /// `t1 *2 t2`: the second compatible product.
    pub fn star2(&mut self, t1: &PlanarTree, t2: &PlanarTree) -> Result<TreeLinComb> {
        if t1.degree() == 0 || t2.degree() == 0 {
            return Err(Error::DegreeZeroOperand);
        }
        let mut out = TreeLinComb::zero();
        for (m, c) in self.tree_coords(t1)? {
            let v = self.star2_monomial_tree(m.expr(), t2)?;
            out.add_scaled(&v, &c);
        }
        Ok(out)
    }

    pub fn star(&mut self, op: ProductOp, t1: &PlanarTree, t2: &PlanarTree) -> Result<TreeLinComb> {
        match op {
            ProductOp::Star1 => self.star1(t1, t2),
            ProductOp::Star2 => self.star2(t1, t2),
        }
    }

    /// Bilinear extension. With `unital` set, the degree-0 tree acts as a
    /// two-sided unit for both products; without it, degree-0 keys are
    /// rejected.
    pub fn star_lin(
        &mut self,
        op: ProductOp,
        x: &TreeLinComb,
        y: &TreeLinComb,
        unital: bool,
    ) -> Result<TreeLinComb> {
        let mut out = TreeLinComb::zero();
        for (kx, cx) in x.iter() {
            for (ky, cy) in y.iter() {
                let c = cx * cy;
                match (kx.degree(), ky.degree()) {
                    (0, _) | (_, 0) if !unital => return Err(Error::DegreeZeroOperand),
                    (0, _) => out.add_term(ky.clone(), &c),
                    (_, 0) => out.add_term(kx.clone(), &c),
                    _ => {
                        let v = self.star(op, kx, ky)?;
                        out.add_scaled(&v, &c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The value of a normal-form monomial under the default assignment.
    pub fn eval_monomial(&mut self, m: &NFMonomial) -> TreeLinComb {
        self.eval_nf_expr(m.expr())
    }

    fn eval_nf_expr(&mut self, m: &Expr) -> TreeLinComb {
        if let Some(hit) = self.nf_values.get(m) {
            return hit.clone();
        }
        let out = match m {
            Expr::Gen(l) => TreeLinComb::unit(PlanarTree::leaf(l.clone())),
            Expr::Node { op: ProductOp::Star1, left, right } => {
                let Expr::Gen(g) = &**left else {
                    panic!("normal form has a generator left of *1")
                };
                let r = self.eval_nf_expr(right);
                star1_lin(&TreeLinComb::unit(PlanarTree::leaf(g.clone())), &r, false)
                    .expect("degree >= 1")
            }
            Expr::Node { op: ProductOp::Star2, left, right } => {
                let r = self.eval_nf_expr(right);
                self.star2_monomial_lin(left, &r).expect("degree >= 1")
            }
        };
        self.nf_values.insert(m.clone(), out.clone());
        out
    }

    fn star2_monomial_lin(&mut self, p: &Expr, q: &TreeLinComb) -> Result<TreeLinComb> {
        let mut out = TreeLinComb::zero();
        for (t, c) in q.iter() {
            let v = self.star2_monomial_tree(p, t)?;
            out.add_scaled(&v, c);
        }
        Ok(out)
    }

    /// `p *2 t` for a normal-form monomial `p`, by the law recursion on the
    /// left factor.
    fn star2_monomial_tree(&mut self, p: &Expr, t: &PlanarTree) -> Result<TreeLinComb> {
        let key = (p.clone(), t.clone());
        if let Some(hit) = self.star2_values.get(&key) {
            return Ok(hit.clone());
        }
        let unit_t = TreeLinComb::unit(t.clone());
        let out = match p {
            Expr::Gen(g) => graft_sum(&PlanarTree::leaf(g.clone()), t, &t.internal_vertices())?,
            Expr::Node { op: ProductOp::Star1, left, right } => {
                let Expr::Gen(gl) = &**left else {
                    panic!("normal form has a generator left of *1")
                };
                let g_tree = PlanarTree::leaf(gl.clone());
                let g = TreeLinComb::unit(g_tree.clone());
                let y_val = self.eval_nf_expr(right);
                // (g *1 y) *2 t = g *1 (y *2 t) + g *2 (y *1 t) - (g *2 y) *1 t
                let y2t = self.star2_monomial_tree(right, t)?;
                let term1 = star1_lin(&g, &y2t, false)?;
                let y1t = star1_lin(&y_val, &unit_t, false)?;
                let term2 = self.star2_degree_one_lin(&g_tree, &y1t)?;
                let gy = self.star2_degree_one_lin(&g_tree, &y_val)?;
                let term3 = star1_lin(&gy, &unit_t, false)?;
                term1.add(&term2).sub(&term3)
            }
            Expr::Node { op: ProductOp::Star2, left, right } => {
                // (p1 *2 p2) *2 t = p1 *2 (p2 *2 t)
                let inner = self.star2_monomial_tree(right, t)?;
                self.star2_monomial_lin(left, &inner)?
            }
        };
        self.star2_values.insert(key, out.clone());
        Ok(out)
    }

    fn star2_degree_one_lin(&self, g: &PlanarTree, q: &TreeLinComb) -> Result<TreeLinComb> {
        let mut out = TreeLinComb::zero();
        for (t, c) in q.iter() {
            out.add_scaled(&graft_sum(g, t, &t.internal_vertices())?, c);
        }
        Ok(out)
    }

    /// Coordinates of a single tree over the word-monomial basis.
    fn tree_coords(&mut self, t: &PlanarTree) -> Result<Vec<(NFMonomial, Rational)>> {
        if let Some(hit) = self.coords.get(t) {
            return Ok(hit.clone());
        }
        let coords = {
            let rhs = TreeLinComb::unit(t.clone());
            let block = self.block(t.degree(), t.label_multiset())?;
            let x = block.system.solve(&rhs).map_err(|e| match e {
                Error::NoSolution => Error::SolveFailure(format!(
                    "evaluation block cannot express tree {}",
                    t.render()
                )),
                other => other,
            })?;
            x.iter().map(|(i, c)| (block.monomials[*i].clone(), c.clone())).collect::<Vec<_>>()
        };
        self.coords.insert(t.clone(), coords.clone());
        Ok(coords)
    }

    fn block(&mut self, degree: usize, multiset: Vec<u32>) -> Result<&Block> {
        let key = (degree, multiset);
        if !self.blocks.contains_key(&key) {
            let monomials: Vec<NFMonomial> = gen_word_monomials(degree, &self.alphabet)
                .into_iter()
                .filter(|m| m.expr().label_multiset() == key.1)
                .collect();
            let mut rows = Vec::with_capacity(monomials.len());
            for m in monomials.clone() {
                rows.push(self.eval_nf_expr(m.expr()));
            }
            let system = SparseMatrix::new(rows).factor();
            self.blocks.insert(key.clone(), Block { monomials, system });
        }
        Ok(&self.blocks[&key])
    }

    /// The unique basis coordinates `c` with `eval(c) = x`, for `x`
    /// homogeneous of degree >= 1. A block that cannot be solved would
    /// contradict the freeness of the tree algebra, so it aborts loudly as
    /// `SolveFailure` rather than picking anything.
    pub fn tree_to_basis(&mut self, x: &TreeLinComb) -> Result<NFLinComb> {
        if x.is_zero() {
            return Ok(NFLinComb::zero());
        }
        let degree = x.keys().next().unwrap().degree();
        if degree == 0 || x.keys().any(|t| t.degree() != degree) {
            return Err(Error::NotHomogeneous);
        }
        let mut out = NFLinComb::zero();
        for (t, c) in x.iter() {
            for (m, cm) in self.tree_coords(t)? {
                out.add_term(m, &(&cm * c));
            }
        }
        Ok(out)
    }

    /// Evaluates one expression: leaves map to assigned trees, operations to
    /// the two products (strict mode).
    pub fn eval_expr_monomial(
        &mut self,
        e: &Expr,
        g: &GeneratorAssignment,
    ) -> Result<TreeLinComb> {
        match e {
            Expr::Gen(l) => Ok(TreeLinComb::unit(g.get(l)?.clone())),
            Expr::Node { op, left, right } => {
                let l = self.eval_expr_monomial(left, g)?;
                let r = self.eval_expr_monomial(right, g)?;
                self.star_lin(*op, &l, &r, false)
            }
        }
    }

    /// Linear extension of [`TreeAlgebra::eval_expr_monomial`].
    pub fn eval_expr(&mut self, x: &ExprLinComb, g: &GeneratorAssignment) -> Result<TreeLinComb> {
        let mut out = TreeLinComb::zero();
        for (e, c) in x.iter() {
            let v = self.eval_expr_monomial(e, g)?;
            out.add_scaled(&v, c);
        }
        Ok(out)
    }

    /// Evaluates basis coordinates.
    pub fn eval_nf(&mut self, x: &NFLinComb, g: &GeneratorAssignment) -> Result<TreeLinComb> {
        self.eval_expr(&x.map_keys(|m| m.expr().clone()), g)
    }

    /// The pencil product on the tensor square:
    /// `(a1 ⊗ b1) ⋆_{λ,μ} (a2 ⊗ b2) =
    ///  (λ a1*1 a2 + μ a1*2 a2) ⊗ (λ b1*1 b2 + μ b1*2 b2)`,
    /// extended bilinearly. `(1,0)` and `(0,1)` are the slotwise products
    /// used by the coproduct-homomorphism law.
    pub fn pencil_tensor_product(
        &mut self,
        lambda: &Rational,
        mu: &Rational,
        x: &TreePairLinComb,
        y: &TreePairLinComb,
        unital: bool,
    ) -> Result<TreePairLinComb> {
        let mut out = TreePairLinComb::zero();
        let x_terms: Vec<_> = x.iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        let y_terms: Vec<_> = y.iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        for ((a1, b1), cx) in &x_terms {
            for ((a2, b2), cy) in &y_terms {
                let left = self.pencil_slot(lambda, mu, a1, a2, unital)?;
                let right = self.pencil_slot(lambda, mu, b1, b2, unital)?;
                let c = cx * cy;
                for (kl, cl) in left.iter() {
                    for (kr, cr) in right.iter() {
                        out.add_term((kl.clone(), kr.clone()), &(&(cl * cr) * &c));
                    }
                }
            }
        }
        Ok(out)
    }

    fn pencil_slot(
        &mut self,
        lambda: &Rational,
        mu: &Rational,
        a: &PlanarTree,
        b: &PlanarTree,
        unital: bool,
    ) -> Result<TreeLinComb> {
        if a.degree() == 0 || b.degree() == 0 {
            if !unital {
                return Err(Error::DegreeZeroOperand);
            }
            let other = if a.degree() == 0 { b } else { a };
            // Unit law applies to each product in the pencil separately.
            return Ok(TreeLinComb::single(other.clone(), lambda + mu));
        }
        let mut out = self.star1(a, b)?.scale(lambda);
        if !mu.is_zero() {
            out.add_scaled(&self.star2(a, b)?, mu);
        }
        Ok(out)
    }
}
