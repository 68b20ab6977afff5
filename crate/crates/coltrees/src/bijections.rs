//! The tree map `tau` from trees colored by `11;10` to trees whose downward
//! paths all have even length, its inverse, and the root-3 composite for
//! `110;100;010`.
//!
//! Color 1 is blue and color 2 is white. A downward path starts at a vertex
//! with at least two children, steps to a non-leftmost child, then follows
//! leftmost children to a leaf.

use crate::error::{Error, Result};
use crate::matrix::ColoringMatrix;
use crate::tree::{build_from_children, glove, unglove, ColoredTree, DyckPath, PlaneTree};

const BLUE: usize = 1;
const WHITE: usize = 2;

/// Sorted edge counts of all downward paths of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DownwardPathProfile {
    pub lengths: Vec<usize>,
}

impl DownwardPathProfile {
    pub fn count(&self) -> usize {
        self.lengths.len()
    }

    pub fn all_even(&self) -> bool {
        self.lengths.iter().all(|l| l % 2 == 0)
    }

    pub fn total_edges(&self) -> usize {
        self.lengths.iter().sum()
    }
}

fn leftmost_depth(t: &PlaneTree) -> usize {
    let mut d = 0;
    let mut cur = t;
    while let Some(c) = cur.children.first() {
        d += 1;
        cur = c;
    }
    d
}

pub fn downward_paths(tree: &PlaneTree) -> DownwardPathProfile {
    let mut lengths = Vec::new();
    let mut stack = vec![tree];
    while let Some(t) = stack.pop() {
        for c in t.children.iter().skip(1) {
            lengths.push(1 + leftmost_depth(c));
        }
        stack.extend(t.children.iter());
    }
    lengths.sort_unstable();
    DownwardPathProfile { lengths }
}

/// Length of the path from the root to the leftmost leaf.
pub fn leftmost_leaf_depth(tree: &PlaneTree) -> usize {
    leftmost_depth(tree)
}

/// Member of the set of trees whose downward paths are all even.
pub fn all_downward_even(tree: &PlaneTree) -> bool {
    downward_paths(tree).all_even()
}

/// Every maximal run of up-steps has even length, except possibly the first
/// when `allow_odd_first` is set.
pub fn ascents_even(path: &DyckPath, allow_odd_first: bool) -> bool {
    path.ascents()
        .iter()
        .enumerate()
        .all(|(k, a)| a % 2 == 0 || (k == 0 && allow_odd_first))
}

/// The coloring matrix whose trees `tau` acts on.
pub fn two_color_matrix() -> ColoringMatrix {
    "11;10".parse().expect("literal matrix")
}

/// Mutable tree with stable vertex ids; vertex 0 is the root.
#[derive(Default)]
struct Arena {
    parent: Vec<Option<usize>>,
    kids: Vec<Vec<usize>>,
}

impl Arena {
    fn with_root() -> Self {
        Arena {
            parent: vec![None],
            kids: vec![Vec::new()],
        }
    }

    fn push_child(&mut self, p: usize, at: usize) -> usize {
        let v = self.parent.len();
        self.parent.push(Some(p));
        self.kids.push(Vec::new());
        self.kids[p].insert(at, v);
        v
    }

    fn push_last(&mut self, p: usize) -> usize {
        let at = self.kids[p].len();
        self.push_child(p, at)
    }

    fn from_tree(t: &PlaneTree) -> Self {
        let parents = t.parents();
        let mut a = Arena {
            parent: parents.clone(),
            kids: vec![Vec::new(); parents.len()],
        };
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                a.kids[*p].push(v);
            }
        }
        a
    }

    fn to_tree(&self) -> PlaneTree {
        build_from_children(0, &self.kids)
    }

    /// Vertex ids in preorder.
    fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parent.len());
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.kids[v].iter().rev());
        }
        out
    }
}

fn check_two_coloring(t: &ColoredTree) -> Result<()> {
    if let Some(&c) = t.colors.iter().find(|&&c| c != BLUE && c != WHITE) {
        return Err(Error::InvalidTree(format!("color {c} is not blue (1) or white (2)")));
    }
    match t.first_violation(&two_color_matrix()) {
        Some(vertex) => Err(Error::InvalidColoring { vertex }),
        None => Ok(()),
    }
}

/// Each vertex of `T` owns a parent-child pair `(x1, x2)` of the image, except
/// a white root, which owns a single vertex and has no `x1`.
type Pair = (Option<usize>, usize);

fn tau_arena(t: &ColoredTree) -> Result<(Arena, Vec<Pair>)> {
    check_two_coloring(t)?;
    let parents = t.shape.parents();
    let colors = &t.colors;
    let mut u = Arena::with_root();
    let mut pairs: Vec<Pair> = Vec::with_capacity(colors.len());
    if colors[0] == BLUE {
        let r2 = u.push_last(0);
        pairs.push((Some(0), r2));
    } else {
        pairs.push((None, 0));
    }
    // children of each vertex of T seen so far, i.e. left-siblings of the next one
    let mut seen_kids: Vec<Vec<usize>> = vec![Vec::new(); colors.len()];
    for v in 1..colors.len() {
        let x = parents[v].expect("non-root vertex");
        let (x1, x2) = pairs[x];
        let anchor = if colors[x] == WHITE || colors[v] == WHITE {
            x2
        } else if let Some(&w) = seen_kids[x].iter().rev().find(|&&w| colors[w] == WHITE) {
            pairs[w].0.expect("white non-root vertex owns a pair")
        } else {
            x1.expect("blue vertex owns a pair")
        };
        let v1 = u.push_last(anchor);
        let v2 = u.push_last(v1);
        pairs.push((Some(v1), v2));
        seen_kids[x].push(v);
    }
    Ok((u, pairs))
}

/// Image of an `11;10`-colored tree: `2n` vertices for a blue root, `2n - 1`
/// for a white root, with every downward path of even length.
pub fn tau(t: &ColoredTree) -> Result<PlaneTree> {
    Ok(tau_arena(t)?.0.to_tree())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    First,
    Second,
}

/// Inverse of [`tau`].
pub fn tau_inv(u: &PlaneTree) -> Result<ColoredTree> {
    if !all_downward_even(u) {
        return Err(Error::InvalidTree("some downward path has odd length".into()));
    }
    let mut a = Arena::from_tree(u);
    let k = a.parent.len();
    let base = if k % 2 == 0 { 2 } else { 1 };

    // Peel pairs off the right spine; record (v1, v2, parent of v1).
    let mut peeled = Vec::with_capacity(k / 2);
    let mut alive = k;
    while alive > base {
        let mut v2 = 0;
        while let Some(&c) = a.kids[v2].last() {
            v2 = c;
        }
        let v1 = a.parent[v2].expect("tree has more than one vertex");
        let y = a.parent[v1].ok_or_else(|| Error::InvalidTree("rightmost leaf pair reaches the root".into()))?;
        if a.kids[v1].len() != 1 {
            return Err(Error::InvalidTree("rightmost leaf has siblings".into()));
        }
        a.kids[v1].clear();
        a.kids[y].pop();
        peeled.push((v1, v2, y));
        alive -= 2;
    }

    let mut role: Vec<Option<(usize, Role)>> = vec![None; k];
    let mut t = Arena::with_root();
    let mut colors = Vec::with_capacity(k.div_ceil(2));
    if base == 2 {
        let r2 = *a.kids[0].first().ok_or_else(|| Error::InvalidTree("base is not an edge".into()))?;
        role[0] = Some((0, Role::First));
        role[r2] = Some((0, Role::Second));
        colors.push(BLUE);
    } else {
        role[0] = Some((0, Role::Second));
        colors.push(WHITE);
    }

    for &(v1, v2, y) in peeled.iter().rev() {
        let (x, r) = role[y].expect("parent was placed earlier");
        let new = match r {
            Role::Second => {
                let c = if colors[x] == BLUE { WHITE } else { BLUE };
                colors.push(c);
                t.push_last(x)
            }
            Role::First if colors[x] == BLUE => {
                let at = t.kids[x]
                    .iter()
                    .position(|&c| colors[c] == WHITE)
                    .unwrap_or(t.kids[x].len());
                colors.push(BLUE);
                t.push_child(x, at)
            }
            Role::First => {
                let px = t.parent[x].ok_or_else(|| Error::InvalidTree("white root has no pair".into()))?;
                colors.push(BLUE);
                t.push_last(px)
            }
        };
        role[v1] = Some((new, Role::First));
        role[v2] = Some((new, Role::Second));
    }

    let order = t.preorder();
    let pre_colors = order.iter().map(|&v| colors[v]).collect();
    ColoredTree::new(t.to_tree(), pre_colors)
}

/// Matrix whose root-color-3 trees the composite path map acts on.
pub fn root3_matrix() -> ColoringMatrix {
    "110;100;010".parse().expect("literal matrix")
}

/// Root-3 tree on `n` vertices to a Dyck path of semilength `2n - 2`: recolor
/// the root blue, apply [`tau`], delete the root, then glove.
pub fn root3_path(t: &ColoredTree) -> Result<DyckPath> {
    if let Some(vertex) = t.first_violation(&root3_matrix()) {
        return Err(Error::InvalidColoring { vertex });
    }
    if t.root_color() != 3 {
        return Err(Error::InvalidTree(format!("root color {} is not 3", t.root_color())));
    }
    let mut colors = t.colors.clone();
    colors[0] = BLUE;
    let image = tau(&ColoredTree::new(t.shape.clone(), colors)?)?;
    let mut top = image;
    let only = top.children.pop().expect("blue root owns an edge");
    if !top.children.is_empty() {
        return Err(Error::InvalidTree("image root has several children".into()));
    }
    Ok(glove(&only))
}

/// Inverse of [`root3_path`].
pub fn root3_path_inv(path: &DyckPath) -> Result<ColoredTree> {
    if !ascents_even(path, false) || path.valley_heights().contains(&1) {
        return Err(Error::InvalidPath(
            "needs even ascents and no valley at height 1".into(),
        ));
    }
    let raised = PlaneTree::node(vec![unglove(path)]);
    let mut t = tau_inv(&raised)?;
    t.colors[0] = 3;
    if let Some(vertex) = t.first_violation(&root3_matrix()) {
        return Err(Error::InvalidColoring { vertex });
    }
    Ok(t)
}

/// Paths in the image family of [`root3_path`].
pub fn is_root3_path(path: &DyckPath) -> bool {
    ascents_even(path, false) && !path.valley_heights().contains(&1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> ColoredTree {
        ColoredTree::from_text(s).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(tau(&ct("(1)")).unwrap(), PlaneTree::path(2));
        assert_eq!(tau(&ct("(2)")).unwrap(), PlaneTree::leaf());
        assert_eq!(tau_inv(&PlaneTree::path(2)).unwrap(), ct("(1)"));
        assert_eq!(tau_inv(&PlaneTree::leaf()).unwrap(), ct("(2)"));
        assert!(tau(&ct("(2(2))")).is_err());
    }

    #[test]
    fn blue_root_example() {
        // a blue; b blue child of a; c blue, d white children of b; e white child of a
        let t = ct("(1(1(1)(2))(2))");
        let u = tau(&t).unwrap();
        assert_eq!(u.size(), 10);
        assert_eq!(downward_paths(&u).lengths, vec![2, 4]);
        assert_eq!(tau_inv(&u).unwrap(), t);
    }

    #[test]
    fn white_root_example() {
        let t = ct("(2(1(1)(2))(1(2)(1)(1)))");
        let u = tau(&t).unwrap();
        assert_eq!(u.size(), 15);
        assert_eq!(downward_paths(&u).lengths, vec![2, 2, 2, 4]);
        assert_eq!(tau_inv(&u).unwrap(), t);
    }

    #[test]
    fn odd_paths_rejected() {
        let star = PlaneTree::from_parens("(()())").unwrap();
        assert!(tau_inv(&star).is_err());
    }

    #[test]
    fn root3_small() {
        assert_eq!(root3_path(&ct("(3)")).unwrap().semilength(), 0);
        assert_eq!(root3_path(&ct("(3(2))")).unwrap().to_string(), "UUDD");
        let p: DyckPath = "UUDD".parse().unwrap();
        assert_eq!(root3_path_inv(&p).unwrap(), ct("(3(2))"));
        assert!(root3_path(&ct("(1(2))")).is_err());
    }
}
