//! Rooted trees with unordered children, stored in canonical orientation.
//!
//! A [`Tree`] is an immutable, reference-counted value. Every vertex caches its
//! leaf count and its canonical code, so two trees are isomorphic exactly when
//! their codes are equal.
//!
//! Canonical code grammar, over the alphabet `(`, `)`, `*`:
//!
//! ```text
//! tree := '*' | '(' tree tree+ ')'
//! ```
//!
//! Children of an internal vertex are concatenated in ascending order of
//! (code length, code bytes).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default leaf cap for [`Tree::complete`].
pub const DEFAULT_LEAF_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Degrees {
    Leaf,
    Uniform(usize),
    Mixed,
}

impl Degrees {
    fn merge(self, other: Degrees) -> Degrees {
        match (self, other) {
            (Degrees::Leaf, x) | (x, Degrees::Leaf) => x,
            (Degrees::Uniform(a), Degrees::Uniform(b)) if a == b => Degrees::Uniform(a),
            _ => Degrees::Mixed,
        }
    }
}

#[derive(Debug)]
struct Node {
    children: Vec<Tree>,
    leaves: usize,
    max_outdegree: usize,
    degrees: Degrees,
    code: Arc<str>,
}

/// A rooted tree without outdegree-1 vertices, in canonical orientation.
#[derive(Clone)]
pub struct Tree(Arc<Node>);

/// Ordering used for canonical codes: shorter first, then bytewise.
pub fn code_order(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree(Arc::new(Node {
            children: Vec::new(),
            leaves: 1,
            max_outdegree: 0,
            degrees: Degrees::Leaf,
            code: Arc::from("*"),
        }))
    }

    /// Builds an internal vertex over `children`, re-sorting them canonically.
    ///
    /// An empty list yields a leaf; a single child is rejected because
    /// outdegree-1 vertices are never stored.
    pub fn from_children(mut children: Vec<Tree>) -> Result<Tree> {
        match children.len() {
            0 => return Ok(Tree::leaf()),
            1 => {
                return Err(Error::Structure(
                    "internal vertex with exactly one child".into(),
                ))
            }
            _ => {}
        }
        children.sort_by(|a, b| code_order(a.code(), b.code()));
        let leaves = children.iter().map(Tree::leaf_count).sum();
        let max_outdegree = children
            .iter()
            .map(|c| c.0.max_outdegree)
            .max()
            .unwrap_or(0)
            .max(children.len());
        let degrees = children
            .iter()
            .fold(Degrees::Uniform(children.len()), |acc, c| acc.merge(c.0.degrees));
        let mut code = String::with_capacity(2 + children.iter().map(|c| c.code().len()).sum::<usize>());
        code.push('(');
        for c in &children {
            code.push_str(c.code());
        }
        code.push(')');
        Ok(Tree(Arc::new(Node {
            children,
            leaves,
            max_outdegree,
            degrees,
            code: Arc::from(code),
        })))
    }

    pub fn children(&self) -> &[Tree] {
        &self.0.children
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.0.leaves
    }

    pub fn code(&self) -> &str {
        &self.0.code
    }

    /// Shared handle to the code, for use as a memo key.
    pub fn code_arc(&self) -> Arc<str> {
        Arc::clone(&self.0.code)
    }

    pub fn max_outdegree(&self) -> usize {
        self.0.max_outdegree
    }

    /// Every internal vertex has outdegree at most `d`.
    pub fn is_d_ary(&self, d: usize) -> bool {
        self.0.max_outdegree <= d
    }

    /// Every vertex has outdegree 0 or exactly `d`.
    pub fn is_strictly_d_ary(&self, d: usize) -> bool {
        match self.0.degrees {
            Degrees::Leaf => true,
            Degrees::Uniform(m) => m == d,
            Degrees::Mixed => false,
        }
    }

    pub fn parse(text: &str) -> Result<Tree> {
        parse_tree(text)
    }

    /// The r-ary caterpillar with `k` leaves; `k = 1` gives the single leaf.
    pub fn caterpillar(r: usize, k: usize) -> Result<Tree> {
        if r < 2 {
            return Err(Error::domain(format!("caterpillar arity r = {r} must be at least 2")));
        }
        if k == 1 {
            return Ok(Tree::leaf());
        }
        if k < r || !(k - 1).is_multiple_of(r - 1) {
            return Err(Error::domain(format!(
                "caterpillar F^{r}_{k} needs k = 1 or k >= r with k = 1 (mod r-1)"
            )));
        }
        let mut t = Tree::from_children(vec![Tree::leaf(); r])?;
        let mut leaves = r;
        while leaves < k {
            let mut children = vec![Tree::leaf(); r - 1];
            children.push(t);
            t = Tree::from_children(children)?;
            leaves += r - 1;
        }
        Ok(t)
    }

    /// Complete d-ary tree of height `h`, refusing more than [`DEFAULT_LEAF_CAP`] leaves.
    pub fn complete(d: usize, h: u32) -> Result<Tree> {
        Tree::complete_with_cap(d, h, DEFAULT_LEAF_CAP)
    }

    pub fn complete_with_cap(d: usize, h: u32, cap: u64) -> Result<Tree> {
        if d < 2 {
            return Err(Error::domain(format!("complete tree arity d = {d} must be at least 2")));
        }
        let leaves = (d as u64).checked_pow(h);
        match leaves {
            Some(l) if l <= cap => {}
            _ => {
                return Err(Error::budget(
                    "leaf count of complete tree",
                    format!("{d}^{h}"),
                    cap,
                ))
            }
        }
        let mut t = Tree::leaf();
        for _ in 0..h {
            t = Tree::from_children(vec![t; d])?;
        }
        Ok(t)
    }

    /// The even binary tree: every vertex splits its leaves ceil/floor.
    pub fn even_binary(n: usize) -> Result<Tree> {
        if n == 0 {
            return Err(Error::domain("even binary tree needs n >= 1"));
        }
        let mut built: Vec<Option<Tree>> = vec![None; n + 1];
        Ok(even_rec(n, &mut built))
    }
}

fn even_rec(n: usize, built: &mut Vec<Option<Tree>>) -> Tree {
    if let Some(t) = &built[n] {
        return t.clone();
    }
    let t = if n == 1 {
        Tree::leaf()
    } else {
        let big = even_rec(n.div_ceil(2), built);
        let small = even_rec(n / 2, built);
        Tree::from_children(vec![big, small]).expect("two children")
    };
    built[n] = Some(t.clone());
    t
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.code() == other.code()
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code().hash(state);
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        code_order(self.code(), other.code())
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.code())
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        parse_tree(s)
    }
}

/// Parses a canonical code, re-sorting children into canonical order.
pub fn parse_tree(text: &str) -> Result<Tree> {
    // stack of (offset of '(', children collected so far)
    let mut stack: Vec<(usize, Vec<Tree>)> = Vec::new();
    let mut done: Option<Tree> = None;
    for (offset, byte) in text.bytes().enumerate() {
        if done.is_some() {
            return Err(Error::Parse {
                offset,
                message: "trailing input after complete tree".into(),
            });
        }
        let finished = match byte {
            b'*' => Some(Tree::leaf()),
            b'(' => {
                stack.push((offset, Vec::new()));
                None
            }
            b')' => {
                let (open, children) = stack.pop().ok_or_else(|| Error::Parse {
                    offset,
                    message: "unmatched ')'".into(),
                })?;
                match children.len() {
                    0 => {
                        return Err(Error::Parse {
                            offset: open,
                            message: "empty parentheses".into(),
                        })
                    }
                    1 => {
                        return Err(Error::Structure(format!(
                            "vertex opened at byte {open} has exactly one child"
                        )))
                    }
                    _ => Some(Tree::from_children(children)?),
                }
            }
            other => {
                return Err(Error::Parse {
                    offset,
                    message: format!("unexpected character {:?}", other as char),
                })
            }
        };
        if let Some(t) = finished {
            match stack.last_mut() {
                Some((_, children)) => children.push(t),
                None => done = Some(t),
            }
        }
    }
    if let Some((open, _)) = stack.last() {
        return Err(Error::Parse {
            offset: *open,
            message: "unclosed '('".into(),
        });
    }
    done.ok_or(Error::Parse {
        offset: 0,
        message: "empty input".into(),
    })
}

pub fn serialize(t: &Tree) -> String {
    t.code().to_string()
}
