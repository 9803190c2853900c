//! Grafting primitives on labeled planar rooted trees: the first (all
//! vertices) product, the degree-one case of the second product, and the
//! branch-splitting coproduct.
//!
//! The first product sums, over every map from the root-branch positions of
//! the left operand to the vertices of the right operand, the tree obtained
//! by inserting the branches sent to a vertex as its new leftmost children
//! in position order. Grafting results that coincide accumulate as integer
//! coefficients: the sums run over maps, not over distinct trees.
//!
//! The second product grafts onto internal vertices only (vertices with at
//! least one child, the root included); the sum over single-vertex choices
//! here is its defining case for a degree-1 left operand. Left operands of
//! higher degree are produced by the algebra laws; see [`crate::algebra`],
//! which hosts the full second product and the bilinear extensions.

use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::tree::{PlanarTree, TreeNode, TreePair, VertexAddr};

/// Which of the two products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductOp {
    Star1,
    Star2,
}

impl ProductOp {
    pub fn id(self) -> u8 {
        match self {
            ProductOp::Star1 => 1,
            ProductOp::Star2 => 2,
        }
    }

    pub fn from_id(id: u8) -> Result<ProductOp> {
        match id {
            1 => Ok(ProductOp::Star1),
            2 => Ok(ProductOp::Star2),
            _ => Err(Error::OutOfRange(format!("product id {id}, expected 1 or 2"))),
        }
    }
}

impl fmt::Display for ProductOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*{}", self.id())
    }
}

/// Exact-rational sums of trees.
pub type TreeLinComb = LinComb<PlanarTree>;

/// Exact-rational sums of ordered tree pairs (the tensor square).
pub type TreePairLinComb = LinComb<TreePair>;

/// Where each root branch of the left operand goes: `targets[i]` receives
/// branch `i+1`. For the second product every target must be internal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraftMap {
    targets: Vec<VertexAddr>,
}

impl GraftMap {
    pub fn new(targets: Vec<VertexAddr>) -> GraftMap {
        GraftMap { targets }
    }

    pub fn targets(&self) -> &[VertexAddr] {
        &self.targets
    }
}

/// Grafts the root branches of `t1` onto vertices of `t2` as directed by
/// `f`. Branches sent to the same vertex keep their position order and all
/// go strictly left of the existing children of that vertex.
pub fn graft(t1: &PlanarTree, t2: &PlanarTree, f: &GraftMap) -> Result<PlanarTree> {
    let k = t1.branches().len();
    if f.targets.len() != k {
        return Err(Error::ArityMismatch { expected: k, got: f.targets.len() });
    }
    for addr in &f.targets {
        if !t2.has_vertex(addr) {
            return Err(Error::InvalidAddress(addr.to_string()));
        }
    }
    let mut prefix = Vec::new();
    let branches = graft_into(t2.branches(), &mut prefix, t1.branches(), &f.targets);
    // Branches grafted at the root go left of the root's own children.
    let mut root = grafted_here(&prefix, t1.branches(), &f.targets);
    root.extend(branches);
    Ok(PlanarTree::from_branches(root))
}

/// The branches of `t1` whose target is exactly `addr`, in position order.
fn grafted_here(addr: &[u32], branches: &[TreeNode], targets: &[VertexAddr]) -> Vec<TreeNode> {
    targets
        .iter()
        .enumerate()
        .filter(|(_, t)| t.path() == addr)
        .map(|(i, _)| branches[i].clone())
        .collect()
}

fn graft_into(
    children: &[TreeNode],
    prefix: &mut Vec<u32>,
    branches: &[TreeNode],
    targets: &[VertexAddr],
) -> Vec<TreeNode> {
    let mut out = Vec::with_capacity(children.len());
    for (i, child) in children.iter().enumerate() {
        prefix.push(i as u32 + 1);
        let mut new_children = grafted_here(prefix, branches, targets);
        new_children.extend(graft_into(child.children(), prefix, branches, targets));
        prefix.pop();
        out.push(TreeNode::new(child.label().clone(), new_children));
    }
    out
}

/// Sum over all maps from the branch positions of `t1` to `targets`.
pub(crate) fn graft_sum(
    t1: &PlanarTree,
    t2: &PlanarTree,
    targets: &[VertexAddr],
) -> Result<TreeLinComb> {
    let k = t1.branches().len();
    let mut out = TreeLinComb::zero();
    if targets.is_empty() {
        return Ok(out);
    }
    let one = Rational::one();
    let mut choice = vec![0usize; k];
    loop {
        let map = GraftMap::new(choice.iter().map(|&c| targets[c].clone()).collect());
        out.add_term(graft(t1, t2, &map)?, &one);
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < targets.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// `t1 *1 t2`: sum over all maps from root-branch positions of `t1` to the
/// vertices of `t2`.
pub fn star1(t1: &PlanarTree, t2: &PlanarTree) -> Result<TreeLinComb> {
    if t1.degree() == 0 || t2.degree() == 0 {
        return Err(Error::DegreeZeroOperand);
    }
    graft_sum(t1, t2, &t2.vertices())
}

/// Bilinear first product; with `unital` set the degree-0 tree is a
/// two-sided unit.
pub fn star1_lin(x: &TreeLinComb, y: &TreeLinComb, unital: bool) -> Result<TreeLinComb> {
    let mut out = TreeLinComb::zero();
    for (kx, cx) in x.iter() {
        for (ky, cy) in y.iter() {
            let c = cx * cy;
            match (kx.degree(), ky.degree()) {
                (0, _) | (_, 0) if !unital => return Err(Error::DegreeZeroOperand),
                (0, _) => out.add_term(ky.clone(), &c),
                (_, 0) => out.add_term(kx.clone(), &c),
                _ => out.add_scaled(&star1(kx, ky)?, &c),
            }
        }
    }
    Ok(out)
}

/// The defining case of the second product: a degree-1 left operand grafted
/// onto each internal vertex of `t2` in turn.
pub fn star2_degree_one(t1: &PlanarTree, t2: &PlanarTree) -> Result<TreeLinComb> {
    if t1.degree() == 0 || t2.degree() == 0 {
        return Err(Error::DegreeZeroOperand);
    }
    assert_eq!(t1.degree(), 1, "star2_degree_one needs a degree-1 left operand");
    graft_sum(t1, t2, &t2.internal_vertices())
}

/// Splits the root branches into ordered complementary subsets:
/// `T = T[1]...T[k]` maps to the sum over `I ⊔ J = [k]` of
/// `(concat of T[i], i in I) ⊗ (concat of T[j], j in J)`, 2^k terms with
/// the empty side rendered as `()`.
pub fn coproduct(t: &PlanarTree) -> TreePairLinComb {
    let parts = t.branch_decomposition();
    let k = parts.len();
    let mut out = TreePairLinComb::zero();
    let one = Rational::one();
    for mask in 0u64..(1u64 << k) {
        let mut left = PlanarTree::empty();
        let mut right = PlanarTree::empty();
        for (i, part) in parts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left = left.concat(part);
            } else {
                right = right.concat(part);
            }
        }
        out.add_term((left, right), &one);
    }
    out
}

/// Linear extension of [`coproduct`].
pub fn coproduct_lin(x: &TreeLinComb) -> TreePairLinComb {
    let mut out = TreePairLinComb::zero();
    for (k, c) in x.iter() {
        out.add_scaled(&coproduct(k), c);
    }
    out
}
