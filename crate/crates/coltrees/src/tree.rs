//! Plane trees, colored plane trees and Dyck paths, with the glove
//! (preorder) bijection between trees on `n` vertices and Dyck paths of
//! semilength `n - 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::ColoringMatrix;

/// Rooted tree with an ordered list of children at every vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlaneTree {
    pub children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree::default()
    }

    pub fn node(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(PlaneTree::leaf(), |t, _| PlaneTree::node(vec![t]))
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::size).sum::<usize>()
    }

    pub fn leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(PlaneTree::leaves).sum()
        }
    }

    /// Parent index of each vertex in preorder (`None` for the root).
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut out = Vec::with_capacity(self.size());
        fn walk(t: &PlaneTree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
            let me = out.len();
            out.push(parent);
            for c in &t.children {
                walk(c, Some(me), out);
            }
        }
        walk(self, None, &mut out);
        out
    }

    /// Rebuilds a tree from preorder parent indices. Children keep the order
    /// in which they appear.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let n = parents.len();
        if n == 0 || parents[0].is_some() {
            return Err(Error::InvalidTree("first vertex must be the root".into()));
        }
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate().skip(1) {
            match p {
                Some(p) if *p < v => kids[*p].push(v),
                _ => return Err(Error::InvalidTree(format!("bad parent for vertex {v}"))),
            }
        }
        Ok(build_from_children(0, &kids))
    }

    /// Balanced-parenthesis form: each vertex is `(` children `)`.
    pub fn to_parens(&self) -> String {
        let mut s = String::with_capacity(2 * self.size());
        fn walk(t: &PlaneTree, s: &mut String) {
            s.push('(');
            for c in &t.children {
                walk(c, s);
            }
            s.push(')');
        }
        walk(self, &mut s);
        s
    }

    pub fn from_parens(text: &str) -> Result<Self> {
        let bytes: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let t = parse_paren_tree(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse {
                pos,
                msg: "trailing input after tree".into(),
            });
        }
        Ok(t)
    }
}

pub(crate) fn build_from_children(v: usize, kids: &[Vec<usize>]) -> PlaneTree {
    PlaneTree::node(kids[v].iter().map(|&c| build_from_children(c, kids)).collect())
}

fn parse_paren_tree(b: &[u8], pos: &mut usize) -> Result<PlaneTree> {
    if b.get(*pos) != Some(&b'(') {
        return Err(Error::Parse {
            pos: *pos,
            msg: "expected '('".into(),
        });
    }
    *pos += 1;
    let mut children = Vec::new();
    while b.get(*pos) == Some(&b'(') {
        children.push(parse_paren_tree(b, pos)?);
    }
    if b.get(*pos) != Some(&b')') {
        return Err(Error::Parse {
            pos: *pos,
            msg: "expected ')'".into(),
        });
    }
    *pos += 1;
    Ok(PlaneTree::node(children))
}

impl fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

impl FromStr for PlaneTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PlaneTree::from_parens(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

/// Sequence of up and down steps; every prefix has at least as many `U` as `D`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut h: i64 = 0;
        for (i, s) in steps.iter().enumerate() {
            h += if *s == Step::U { 1 } else { -1 };
            if h < 0 {
                return Err(Error::InvalidPath(format!("goes below zero at step {}", i + 1)));
            }
        }
        if h != 0 {
            return Err(Error::InvalidPath(format!("ends at height {h}")));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Lengths of the maximal runs of `U` steps, left to right.
    pub fn ascents(&self) -> Vec<usize> {
        runs(&self.steps, Step::U)
    }

    pub fn descents(&self) -> Vec<usize> {
        runs(&self.steps, Step::D)
    }

    /// Heights of the valley points (a `D` immediately followed by a `U`).
    pub fn valley_heights(&self) -> Vec<usize> {
        let mut h = 0usize;
        let mut out = Vec::new();
        for w in 0..self.steps.len() {
            match self.steps[w] {
                Step::U => h += 1,
                Step::D => {
                    h -= 1;
                    if self.steps.get(w + 1) == Some(&Step::U) {
                        out.push(h);
                    }
                }
            }
        }
        out
    }

    /// All Dyck paths of the given semilength, in lexicographic order with `U < D`.
    pub fn all(semilength: usize) -> Vec<DyckPath> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(2 * semilength);
        fn rec(up: usize, down: usize, n: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
            if cur.len() == 2 * n {
                out.push(DyckPath { steps: cur.clone() });
                return;
            }
            if up < n {
                cur.push(Step::U);
                rec(up + 1, down, n, cur, out);
                cur.pop();
            }
            if down < up {
                cur.push(Step::D);
                rec(up, down + 1, n, cur, out);
                cur.pop();
            }
        }
        rec(0, 0, semilength, &mut cur, &mut out);
        out
    }
}

fn runs(steps: &[Step], which: Step) -> Vec<usize> {
    let mut out = Vec::new();
    let mut run = 0;
    for s in steps {
        if *s == which {
            run += 1;
        } else if run > 0 {
            out.push(run);
            run = 0;
        }
    }
    if run > 0 {
        out.push(run);
    }
    out
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == Step::U { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckPath({self})")
    }
}

impl FromStr for DyckPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                _ => Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// Preorder traversal: `U` when stepping to a child, `D` when returning.
pub fn glove(tree: &PlaneTree) -> DyckPath {
    let mut steps = Vec::with_capacity(2 * tree.size());
    fn walk(t: &PlaneTree, steps: &mut Vec<Step>) {
        for c in &t.children {
            steps.push(Step::U);
            walk(c, steps);
            steps.push(Step::D);
        }
    }
    walk(tree, &mut steps);
    DyckPath { steps }
}

pub fn unglove(path: &DyckPath) -> PlaneTree {
    let mut parents: Vec<Option<usize>> = vec![None];
    let mut stack = vec![0usize];
    for s in path.steps() {
        match s {
            Step::U => {
                let v = parents.len();
                parents.push(Some(*stack.last().expect("valid path")));
                stack.push(v);
            }
            Step::D => {
                stack.pop();
            }
        }
    }
    PlaneTree::from_parents(&parents).expect("preorder parents are valid")
}

/// Upper bound on `n` accepted by [`enumerate_plane_trees`].
pub const MAX_TREE_SIZE: usize = 12;

/// All plane trees on `n` vertices, ordered by their glove paths.
pub fn enumerate_plane_trees(n: usize) -> Result<Vec<PlaneTree>> {
    if n == 0 || n > MAX_TREE_SIZE {
        return Err(Error::OutOfRange {
            what: "tree size",
            detail: format!("{n} not in 1..={MAX_TREE_SIZE}"),
        });
    }
    Ok(DyckPath::all(n - 1).iter().map(unglove).collect())
}

/// Plane tree with one color in `1..=m` per vertex, listed in preorder.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredTree {
    pub shape: PlaneTree,
    pub colors: Vec<usize>,
}

impl ColoredTree {
    pub fn new(shape: PlaneTree, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != shape.size() {
            return Err(Error::InvalidTree(format!(
                "{} colors for {} vertices",
                colors.len(),
                shape.size()
            )));
        }
        if colors.contains(&0) {
            return Err(Error::InvalidTree("colors are 1-based".into()));
        }
        Ok(ColoredTree { shape, colors })
    }

    pub fn root_color(&self) -> usize {
        self.colors[0]
    }

    pub fn size(&self) -> usize {
        self.colors.len()
    }

    /// First vertex (preorder) whose parent/child pair is forbidden by `a`.
    pub fn first_violation(&self, a: &ColoringMatrix) -> Option<usize> {
        let parents = self.shape.parents();
        for (v, p) in parents.iter().enumerate() {
            let c = self.colors[v];
            if c > a.size() {
                return Some(v);
            }
            if let Some(p) = p {
                if !a.get(self.colors[*p], c) {
                    return Some(v);
                }
            }
        }
        None
    }

    pub fn is_valid(&self, a: &ColoringMatrix) -> bool {
        self.first_violation(a).is_none()
    }

    /// Parenthesis form with the color digit(s) after each `(`, e.g. `(1(2)(1))`.
    /// Colors above 9 are written in braces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut idx = 0;
        fn walk(t: &PlaneTree, colors: &[usize], idx: &mut usize, s: &mut String) {
            s.push('(');
            let c = colors[*idx];
            if c < 10 {
                s.push_str(&c.to_string());
            } else {
                s.push_str(&format!("{{{c}}}"));
            }
            *idx += 1;
            for ch in &t.children {
                walk(ch, colors, idx, s);
            }
            s.push(')');
        }
        walk(&self.shape, &self.colors, &mut idx, &mut s);
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let b: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let mut colors = Vec::new();
        fn rec(b: &[u8], pos: &mut usize, colors: &mut Vec<usize>) -> Result<PlaneTree> {
            if b.get(*pos) != Some(&b'(') {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected '('".into(),
                });
            }
            *pos += 1;
            let color = match b.get(*pos) {
                Some(d @ b'1'..=b'9') => {
                    *pos += 1;
                    (d - b'0') as usize
                }
                Some(b'{') => {
                    let start = *pos + 1;
                    let end = b[start..]
                        .iter()
                        .position(|&c| c == b'}')
                        .map(|k| start + k)
                        .ok_or(Error::Parse {
                            pos: *pos,
                            msg: "unclosed color brace".into(),
                        })?;
                    let c = std::str::from_utf8(&b[start..end])
                        .ok()
                        .and_then(|s| s.parse::<usize>().ok())
                        .filter(|&c| c > 0)
                        .ok_or(Error::Parse {
                            pos: start,
                            msg: "bad color".into(),
                        })?;
                    *pos = end + 1;
                    c
                }
                _ => {
                    return Err(Error::Parse {
                        pos: *pos,
                        msg: "expected a color".into(),
                    })
                }
            };
            colors.push(color);
            let mut children = Vec::new();
            while b.get(*pos) == Some(&b'(') {
                children.push(rec(b, pos, colors)?);
            }
            if b.get(*pos) != Some(&b')') {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected ')'".into(),
                });
            }
            *pos += 1;
            Ok(PlaneTree::node(children))
        }
        let shape = rec(&b, &mut pos, &mut colors)?;
        if pos != b.len() {
            return Err(Error::Parse {
                pos,
                msg: "trailing input after tree".into(),
            });
        }
        ColoredTree::new(shape, colors)
    }
}

impl fmt::Debug for ColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for ColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for ColoredTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ColoredTree::from_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glove_examples() {
        assert_eq!(glove(&PlaneTree::path(3)).to_string(), "UUDD");
        let star = PlaneTree::from_parens("(()())").unwrap();
        assert_eq!(glove(&star).to_string(), "UDUD");
        assert_eq!(unglove(&"UDUD".parse().unwrap()), star);
        assert_eq!(unglove(&"UUDD".parse().unwrap()), PlaneTree::path(3));
        assert_eq!(unglove(&DyckPath::default()), PlaneTree::leaf());
    }

    #[test]
    fn eight_vertex_example() {
        let p: DyckPath = "UUDUUDDDUDUDUD".parse().unwrap();
        let t = unglove(&p);
        assert_eq!(t.size(), 8);
        assert_eq!(glove(&t), p);
    }

    #[test]
    fn path_validation() {
        assert!("UDD".parse::<DyckPath>().is_err());
        assert!("DU".parse::<DyckPath>().is_err());
        assert!("UUD".parse::<DyckPath>().is_err());
    }

    #[test]
    fn plane_tree_counts() {
        assert_eq!(enumerate_plane_trees(1).unwrap(), vec![PlaneTree::leaf()]);
        assert_eq!(enumerate_plane_trees(4).unwrap().len(), 5);
        assert_eq!(enumerate_plane_trees(6).unwrap().len(), 42);
        assert!(enumerate_plane_trees(0).is_err());
        assert!(enumerate_plane_trees(13).is_err());
    }

    #[test]
    fn colored_text_round_trip() {
        let t = ColoredTree::from_text("(1(1(1)(2))(2))").unwrap();
        assert_eq!(t.colors, vec![1, 1, 1, 2, 2]);
        assert_eq!(t.to_text(), "(1(1(1)(2))(2))");
        let big = ColoredTree::new(PlaneTree::path(2), vec![12, 3]).unwrap();
        assert_eq!(ColoredTree::from_text(&big.to_text()).unwrap(), big);
    }

    #[test]
    fn valley_heights_and_runs() {
        let p: DyckPath = "UUDUUDDD".parse().unwrap();
        assert_eq!(p.ascents(), vec![2, 2]);
        assert_eq!(p.descents(), vec![1, 3]);
        assert_eq!(p.valley_heights(), vec![1]);
    }
}
