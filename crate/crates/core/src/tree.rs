//! Labeled planar rooted trees.
//!
//! A tree has an unlabeled root carrying an ordered sequence of branches;
//! every non-root vertex carries a label from a finite ordered alphabet and
//! its own ordered children. The degree of a tree is its number of non-root
//! vertices, so the root-only tree `()` has degree 0.
//!
//! Canonical text grammar (whitespace-separated siblings):
//!
//! ```text
//! Tree   := "(" Forest ")"
//! Forest := Node*
//! Node   := Label | Label "(" Forest ")"
//! Label  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Canonical rendering uses single spaces between siblings and no space
//! inside parentheses. Trees are totally ordered by comparing renderings
//! lexicographically, with label occurrences compared by alphabet order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::Key;
use crate::text::Cursor;

/// The ordered label set for one session. Order is the declaration order,
/// which is what label comparisons and tree comparisons use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Alphabet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if !valid_label(l) {
                return Err(Error::BadLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Alphabet { labels })
    }

    /// The alphabet `x1, .., xk`.
    pub fn numbered(k: usize) -> Alphabet {
        Alphabet { labels: (1..=k).map(|i| format!("x{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, text: &str) -> Result<Label> {
        match self.labels.iter().position(|l| l == text) {
            Some(i) => Ok(self.label_at(i)),
            None => Err(Error::UnknownLabel(text.to_string())),
        }
    }

    pub fn label_at(&self, index: usize) -> Label {
        Label { index: index as u32, text: self.labels[index].clone() }
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.len()).map(|i| self.label_at(i))
    }

    pub fn names(&self) -> &[String] {
        &self.labels
    }
}

fn valid_label(s: &str) -> bool {
    let bytes = s.as_bytes();
    !bytes.is_empty()
        && bytes[0].is_ascii_alphabetic()
        && bytes.iter().all(|b| b.is_ascii_alphanumeric() || *b == b'_')
}

/// A vertex label. Compares by alphabet position, not by text.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    index: u32,
    text: String,
}

impl Label {
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn index(&self) -> u32 {
        self.index
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index)
    }
}

/// A labeled non-root vertex together with its subtree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeNode {
    pub(crate) label: Label,
    pub(crate) children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn new(label: Label, children: Vec<TreeNode>) -> TreeNode {
        TreeNode { label, children }
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn children(&self) -> &[TreeNode] {
        &self.children
    }

    fn size(&self) -> usize {
        1 + self.children.iter().map(TreeNode::size).sum::<usize>()
    }
}

/// A planar rooted tree with labeled non-root vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarTree {
    pub(crate) branches: Vec<TreeNode>,
}

/// Path of 1-based child indices from the root; the empty path is the root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexAddr {
    path: Vec<u32>,
}

impl VertexAddr {
    pub fn root() -> VertexAddr {
        VertexAddr { path: Vec::new() }
    }

    pub fn new(path: Vec<u32>) -> VertexAddr {
        VertexAddr { path }
    }

    pub fn is_root(&self) -> bool {
        self.path.is_empty()
    }

    pub fn path(&self) -> &[u32] {
        &self.path
    }

    fn child(&self, i: u32) -> VertexAddr {
        let mut path = self.path.clone();
        path.push(i);
        VertexAddr { path }
    }
}

impl fmt::Display for VertexAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.path.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Rendering token; the derived order matches byte order of the rendered
/// text (` ` < `(` < `)` < labels) except that labels compare by alphabet
/// position.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Tok {
    Sep,
    Open,
    Close,
    Label(u32),
}

impl PlanarTree {
    /// The degree-0 tree: a bare root.
    pub fn empty() -> PlanarTree {
        PlanarTree { branches: Vec::new() }
    }

    pub fn from_branches(branches: Vec<TreeNode>) -> PlanarTree {
        PlanarTree { branches }
    }

    /// A two-vertex tree: the root with one child labeled `label`.
    pub fn leaf(label: Label) -> PlanarTree {
        PlanarTree { branches: vec![TreeNode::new(label, Vec::new())] }
    }

    pub fn branches(&self) -> &[TreeNode] {
        &self.branches
    }

    /// Number of non-root vertices.
    pub fn degree(&self) -> usize {
        self.branches.iter().map(TreeNode::size).sum()
    }

    pub fn is_empty_tree(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<PlanarTree> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let t = Self::parse_cursor(&mut cur, alphabet)?;
        cur.expect_end()?;
        Ok(t)
    }

    /// Parses one tree starting at the cursor, leaving trailing input alone.
    pub fn parse_cursor(cur: &mut Cursor, alphabet: &Alphabet) -> Result<PlanarTree> {
        cur.expect(b'(')?;
        let branches = parse_forest(cur, alphabet)?;
        cur.expect(b')')?;
        Ok(PlanarTree { branches })
    }

    /// Canonical text form; parsing it back gives the same tree.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push('(');
        render_forest(&self.branches, &mut out);
        out.push(')');
        out
    }

    /// All vertices in preorder: root first, then children left to right.
    pub fn vertices(&self) -> Vec<VertexAddr> {
        let mut out = vec![VertexAddr::root()];
        for (i, b) in self.branches.iter().enumerate() {
            collect_vertices(b, VertexAddr::root().child(i as u32 + 1), &mut out);
        }
        out
    }

    /// The vertices with at least one child, in preorder. The root counts as
    /// internal exactly when the tree has positive degree.
    pub fn internal_vertices(&self) -> Vec<VertexAddr> {
        let mut out = Vec::new();
        if !self.branches.is_empty() {
            out.push(VertexAddr::root());
        }
        for (i, b) in self.branches.iter().enumerate() {
            collect_internal(b, VertexAddr::root().child(i as u32 + 1), &mut out);
        }
        out
    }

    pub fn has_vertex(&self, addr: &VertexAddr) -> bool {
        let mut children: &[TreeNode] = &self.branches;
        for &i in addr.path() {
            if i == 0 || i as usize > children.len() {
                return false;
            }
            children = &children[i as usize - 1].children;
        }
        true
    }

    /// Root concatenation: branches of `self` first, then branches of
    /// `other`, under a shared root.
    pub fn concat(&self, other: &PlanarTree) -> PlanarTree {
        let mut branches = self.branches.clone();
        branches.extend(other.branches.iter().cloned());
        PlanarTree { branches }
    }

    /// The unique factorization into single-branch trees; concatenating the
    /// list in order reproduces the tree.
    pub fn branch_decomposition(&self) -> Vec<PlanarTree> {
        self.branches
            .iter()
            .map(|b| PlanarTree { branches: vec![b.clone()] })
            .collect()
    }

    /// Sorted label indices of all non-root vertices.
    pub fn label_multiset(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree());
        fn walk(node: &TreeNode, out: &mut Vec<u32>) {
            out.push(node.label.index);
            for c in &node.children {
                walk(c, out);
            }
        }
        for b in &self.branches {
            walk(b, &mut out);
        }
        out.sort_unstable();
        out
    }

    fn tokens(&self) -> Vec<Tok> {
        let mut out = vec![Tok::Open];
        forest_tokens(&self.branches, &mut out);
        out.push(Tok::Close);
        out
    }
}

fn collect_vertices(node: &TreeNode, addr: VertexAddr, out: &mut Vec<VertexAddr>) {
    out.push(addr.clone());
    for (i, c) in node.children.iter().enumerate() {
        collect_vertices(c, addr.child(i as u32 + 1), out);
    }
}

fn collect_internal(node: &TreeNode, addr: VertexAddr, out: &mut Vec<VertexAddr>) {
    if !node.children.is_empty() {
        out.push(addr.clone());
    }
    for (i, c) in node.children.iter().enumerate() {
        collect_internal(c, addr.child(i as u32 + 1), out);
    }
}

fn render_forest(branches: &[TreeNode], out: &mut String) {
    for (i, b) in branches.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(b.label.text());
        if !b.children.is_empty() {
            out.push('(');
            render_forest(&b.children, out);
            out.push(')');
        }
    }
}

fn forest_tokens(branches: &[TreeNode], out: &mut Vec<Tok>) {
    for (i, b) in branches.iter().enumerate() {
        if i > 0 {
            out.push(Tok::Sep);
        }
        out.push(Tok::Label(b.label.index));
        if !b.children.is_empty() {
            out.push(Tok::Open);
            forest_tokens(&b.children, out);
            out.push(Tok::Close);
        }
    }
}

fn parse_forest(cur: &mut Cursor, alphabet: &Alphabet) -> Result<Vec<TreeNode>> {
    let mut out = Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(b')') | None => return Ok(out),
            Some(b) if b.is_ascii_alphabetic() => {
                let name = cur.ident()?;
                let label = alphabet.label(&name)?;
                // Children attach only when `(` follows the label directly;
                // after whitespace a `(` is a syntax error, keeping the
                // sibling grammar unambiguous.
                let children = if cur.peek() == Some(b'(') {
                    cur.bump();
                    let c = parse_forest(cur, alphabet)?;
                    cur.expect(b')')?;
                    c
                } else {
                    Vec::new()
                };
                out.push(TreeNode { label, children });
            }
            Some(_) => return Err(cur.error("expected label or `)`")),
        }
    }
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tokens().cmp(&other.tokens())
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Key for PlanarTree {
    fn render(&self) -> String {
        PlanarTree::render(self)
    }
}

/// Ordered pairs of trees, the key domain of coproduct values. Renders as
/// `TREE (x) TREE`.
pub type TreePair = (PlanarTree, PlanarTree);

impl Key for TreePair {
    fn render(&self) -> String {
        format!("{} (x) {}", self.0.render(), self.1.render())
    }
}

/// All labeled planar rooted trees of the given degree, each exactly once,
/// in canonical order. The count is `c_n * |S|^n`.
pub fn enumerate_trees(degree: usize, alphabet: &Alphabet) -> Vec<PlanarTree> {
    let mut out = Vec::new();
    visit_trees(degree, alphabet, &mut |t| out.push(t.clone()));
    out.sort();
    out
}

/// Streaming form of [`enumerate_trees`]; visit order is unspecified.
pub fn visit_trees(degree: usize, alphabet: &Alphabet, f: &mut dyn FnMut(&PlanarTree)) {
    visit_forests(degree, alphabet, &mut |branches| {
        f(&PlanarTree { branches });
    });
}

fn visit_forests(n: usize, a: &Alphabet, f: &mut dyn FnMut(Vec<TreeNode>)) {
    if n == 0 {
        f(Vec::new());
        return;
    }
    for first in 1..=n {
        for li in 0..a.len() {
            let label = a.label_at(li);
            visit_forests(first - 1, a, &mut |children| {
                let branch = TreeNode { label: label.clone(), children };
                visit_forests(n - first, a, &mut |mut rest| {
                    let mut v = Vec::with_capacity(rest.len() + 1);
                    v.push(branch.clone());
                    v.append(&mut rest);
                    f(v);
                });
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CATALAN: [usize; 9] = [1, 1, 2, 5, 14, 42, 132, 429, 1430];

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    fn t(s: &str) -> PlanarTree {
        PlanarTree::parse(s, &ab()).unwrap()
    }

    #[test]
    fn parse_basic() {
        assert_eq!(t("()").degree(), 0);
        assert_eq!(t("(a)").degree(), 1);
        let tree = t("(a(b) c)");
        assert_eq!(tree.degree(), 3);
        assert_eq!(tree.branches().len(), 2);
        assert_eq!(tree.branches()[0].children().len(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(t_err("(a"), Error::Parse { .. }));
        assert!(matches!(t_err("(a))"), Error::Parse { .. }));
        assert!(matches!(t_err("(z)"), Error::UnknownLabel(_)));
        // `(` after whitespace does not attach children
        assert!(matches!(t_err("(a (b))"), Error::Parse { .. }));
        fn t_err(s: &str) -> Error {
            PlanarTree::parse(s, &Alphabet::new(["a", "b", "c"]).unwrap()).unwrap_err()
        }
    }

    #[test]
    fn render_canonical() {
        assert_eq!(PlanarTree::empty().render(), "()");
        assert_eq!(t("(b(a))").render(), "(b(a))");
        assert_eq!(t("(a b)").render(), "(a b)");
        assert_eq!(t("( a(b)   c )").render(), "(a(b) c)");
    }

    #[test]
    fn vertices_preorder() {
        assert_eq!(t("()").vertices(), vec![VertexAddr::root()]);
        assert_eq!(
            t("(a b)").vertices(),
            vec![VertexAddr::root(), VertexAddr::new(vec![1]), VertexAddr::new(vec![2])]
        );
        assert_eq!(
            t("(a(b) c)").vertices(),
            vec![
                VertexAddr::root(),
                VertexAddr::new(vec![1]),
                VertexAddr::new(vec![1, 1]),
                VertexAddr::new(vec![2])
            ]
        );
    }

    #[test]
    fn internal_vertices_examples() {
        assert!(t("()").internal_vertices().is_empty());
        assert_eq!(t("(b)").internal_vertices(), vec![VertexAddr::root()]);
        assert_eq!(
            t("(a(b) c)").internal_vertices(),
            vec![VertexAddr::root(), VertexAddr::new(vec![1])]
        );
    }

    #[test]
    fn vertex_count_is_degree_plus_one() {
        for d in 0..=4 {
            for tree in enumerate_trees(d, &Alphabet::new(["a", "b"]).unwrap()) {
                assert_eq!(tree.vertices().len(), tree.degree() + 1);
                let ints = tree.internal_vertices();
                let verts = tree.vertices();
                assert!(ints.iter().all(|v| verts.contains(v)));
            }
        }
    }

    #[test]
    fn concat_examples() {
        assert_eq!(t("(a)").concat(&t("(b)")), t("(a b)"));
        assert_eq!(t("()").concat(&t("(a(b) c)")), t("(a(b) c)"));
        assert_eq!(t("(a b)").concat(&t("(c)")), t("(a b c)"));
    }

    #[test]
    fn concat_associative_with_unit() {
        let one = Alphabet::new(["x"]).unwrap();
        let mut pool = vec![PlanarTree::empty()];
        for d in 1..=3 {
            pool.extend(enumerate_trees(d, &one));
        }
        for t1 in &pool {
            for t2 in &pool {
                for t3 in &pool {
                    if t1.degree() + t2.degree() + t3.degree() > 5 {
                        continue;
                    }
                    assert_eq!(t1.concat(t2).concat(t3), t1.concat(&t2.concat(t3)));
                }
            }
            assert_eq!(t1.concat(&PlanarTree::empty()), *t1);
            assert_eq!(PlanarTree::empty().concat(t1), *t1);
        }
    }

    #[test]
    fn branch_decomposition_examples() {
        assert_eq!(t("(a b)").branch_decomposition(), vec![t("(a)"), t("(b)")]);
        assert_eq!(t("(b(a))").branch_decomposition(), vec![t("(b(a))")]);
        assert!(t("()").branch_decomposition().is_empty());
        // concat of the parts reproduces the tree
        let tree = t("(a(b) c b)");
        let mut back = PlanarTree::empty();
        for part in tree.branch_decomposition() {
            assert_eq!(part.branches().len(), 1);
            back = back.concat(&part);
        }
        assert_eq!(back, tree);
    }

    #[test]
    fn enumerate_small() {
        let one = Alphabet::new(["x"]).unwrap();
        let trees: Vec<String> =
            enumerate_trees(2, &one).iter().map(|t| t.render()).collect();
        assert_eq!(trees, vec!["(x x)", "(x(x))"]);
        assert_eq!(enumerate_trees(3, &one).len(), 5);
        assert_eq!(enumerate_trees(2, &Alphabet::new(["a", "b"]).unwrap()).len(), 8);
    }

    #[test]
    fn enumerate_counts_and_injectivity() {
        for labels in 1..=2usize {
            let a = Alphabet::numbered(labels);
            for n in 0..=4 {
                let trees = enumerate_trees(n, &a);
                assert_eq!(trees.len(), CATALAN[n] * labels.pow(n as u32));
                let rendered: std::collections::BTreeSet<String> =
                    trees.iter().map(|t| t.render()).collect();
                assert_eq!(rendered.len(), trees.len(), "renderings must be distinct");
                for tree in &trees {
                    assert_eq!(PlanarTree::parse(&tree.render(), &a).unwrap(), *tree);
                }
            }
        }
    }

    #[test]
    fn enumerate_counts_to_degree_eight() {
        for labels in 1..=2usize {
            let a = Alphabet::numbered(labels);
            for n in 5..=8 {
                let mut count = 0usize;
                visit_trees(n, &a, &mut |_| count += 1);
                assert_eq!(count, CATALAN[n] * labels.pow(n as u32));
            }
        }
    }

    #[test]
    fn canonical_order_is_deterministic() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let trees = enumerate_trees(2, &a);
        let rendered: Vec<String> = trees.iter().map(|t| t.render()).collect();
        let mut sorted = rendered.clone();
        sorted.sort();
        // For an alphabet in its natural text order, tree order agrees with
        // plain byte order of renderings.
        assert_eq!(rendered, sorted);
    }

    #[test]
    fn alphabet_validation() {
        assert!(matches!(Alphabet::new(["a", "a"]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(Alphabet::new(["1a"]), Err(Error::BadLabel(_))));
        assert!(matches!(Alphabet::new([""]), Err(Error::BadLabel(_))));
        assert!(Alphabet::new(["A_1", "b2"]).is_ok());
    }

    #[test]
    fn label_multiset() {
        assert_eq!(t("(a(b) c)").label_multiset(), vec![0, 1, 2]);
        assert_eq!(t("(b(b))").label_multiset(), vec![1, 1]);
    }

    #[cfg(test)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_node() -> impl Strategy<Value = TreeNode> {
            let alphabet = Alphabet::new(["a", "b", "c"]).unwrap();
            let leaf = (0usize..3).prop_map(move |i| TreeNode::new(alphabet.label_at(i), Vec::new()));
            leaf.prop_recursive(3, 24, 3, |inner| {
                let alphabet = Alphabet::new(["a", "b", "c"]).unwrap();
                (0usize..3, proptest::collection::vec(inner, 0..3))
                    .prop_map(move |(i, children)| TreeNode::new(alphabet.label_at(i), children))
            })
        }

        proptest! {
            #[test]
            fn parse_render_roundtrip(branches in proptest::collection::vec(arb_node(), 0..4)) {
                let alphabet = Alphabet::new(["a", "b", "c"]).unwrap();
                let tree = PlanarTree::from_branches(branches);
                let back = PlanarTree::parse(&tree.render(), &alphabet).unwrap();
                prop_assert_eq!(back, tree);
            }
        }
    }
}
