//! Noncrossing planar pairings between `src` bottom points and `dst` top
//! points.
//!
//! Boundary points are numbered counterclockwise from the bottom-left
//! corner: bottom points `0..src` left to right, then top points right to
//! left, so top point `j` (counted from the left) has index
//! `src + dst - 1 - j`. A pairing is stored as its partner array in that
//! numbering, which is canonical and cheap to hash.

use std::fmt;

use crate::error::{Error, Result};

/// A boundary point of a rectangular diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Bottom(usize),
    Top(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarPairing {
    src: usize,
    dst: usize,
    partner: Vec<u32>,
}

impl PlanarPairing {
    /// Validates a partner array given in the counterclockwise numbering.
    pub fn from_partner(src: usize, dst: usize, partner: Vec<u32>) -> Result<Self> {
        let n = src + dst;
        if partner.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: partner.len(),
            });
        }
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidPairing(format!(
                "odd number of boundary points ({src} + {dst})"
            )));
        }
        for (i, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= n || p == i || partner[p] as usize != i {
                return Err(Error::InvalidPairing(format!(
                    "point {i} has inconsistent partner {p}"
                )));
            }
        }
        if !is_noncrossing(&partner) {
            return Err(Error::InvalidPairing("pairing has crossing arcs".into()));
        }
        Ok(PlanarPairing { src, dst, partner })
    }

    /// Builds a pairing from endpoint pairs.
    pub fn from_endpoints(src: usize, dst: usize, pairs: &[(Endpoint, Endpoint)]) -> Result<Self> {
        let n = src + dst;
        let mut partner = vec![u32::MAX; n];
        for &(a, b) in pairs {
            let (ia, ib) = (index_of(src, dst, a)?, index_of(src, dst, b)?);
            if partner[ia] != u32::MAX || partner[ib] != u32::MAX {
                return Err(Error::InvalidPairing("point used twice".into()));
            }
            partner[ia] = ib as u32;
            partner[ib] = ia as u32;
        }
        if partner.contains(&u32::MAX) {
            return Err(Error::InvalidPairing("unmatched boundary point".into()));
        }
        Self::from_partner(src, dst, partner)
    }

    /// Internal constructor for operations that preserve planarity.
    pub(crate) fn from_endpoints_unchecked(
        src: usize,
        dst: usize,
        pairs: impl IntoIterator<Item = (Endpoint, Endpoint)>,
    ) -> Self {
        let n = src + dst;
        let mut partner = vec![0u32; n];
        for (a, b) in pairs {
            let ia = raw_index(src, dst, a);
            let ib = raw_index(src, dst, b);
            partner[ia] = ib as u32;
            partner[ib] = ia as u32;
        }
        debug_assert!(is_noncrossing(&partner), "planarity lost");
        PlanarPairing { src, dst, partner }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_endpoints_unchecked(n, n, (0..n).map(|i| (Endpoint::Bottom(i), Endpoint::Top(i))))
    }

    /// The turn-back `2 → 0`.
    pub fn cup() -> Self {
        Self::from_endpoints_unchecked(2, 0, [(Endpoint::Bottom(0), Endpoint::Bottom(1))])
    }

    /// The turn-back `0 → 2`.
    pub fn cap() -> Self {
        Self::from_endpoints_unchecked(0, 2, [(Endpoint::Top(0), Endpoint::Top(1))])
    }

    /// `k` nested turn-backs `2k → 0`; point `i` is joined to `2k - 1 - i`.
    pub fn nested_cups(k: usize) -> Self {
        Self::from_endpoints_unchecked(
            2 * k,
            0,
            (0..k).map(|i| (Endpoint::Bottom(i), Endpoint::Bottom(2 * k - 1 - i))),
        )
    }

    /// `k` nested turn-backs `0 → 2k`.
    pub fn nested_caps(k: usize) -> Self {
        Self::nested_cups(k).reflect()
    }

    /// The generator `e_i` on `n` strands, `1 ≤ i ≤ n - 1`.
    pub fn generator(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                what: format!("Temperley-Lieb generator on {n} strands"),
            });
        }
        let mut pairs = vec![
            (Endpoint::Bottom(i - 1), Endpoint::Bottom(i)),
            (Endpoint::Top(i - 1), Endpoint::Top(i)),
        ];
        pairs.extend(
            (0..n)
                .filter(|&k| k != i - 1 && k != i)
                .map(|k| (Endpoint::Bottom(k), Endpoint::Top(k))),
        );
        Ok(Self::from_endpoints_unchecked(n, n, pairs))
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn partner_array(&self) -> &[u32] {
        &self.partner
    }

    /// The canonical sorted pair list `(a, b)` with `a < b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p as usize)
            .map(|(i, &p)| (i, p as usize))
            .collect()
    }

    pub fn endpoint(&self, idx: usize) -> Endpoint {
        if idx < self.src {
            Endpoint::Bottom(idx)
        } else {
            Endpoint::Top(self.src + self.dst - 1 - idx)
        }
    }

    pub fn partner(&self, e: Endpoint) -> Endpoint {
        self.endpoint(self.partner[raw_index(self.src, self.dst, e)] as usize)
    }

    /// Number of strands joining a bottom point to a top point.
    pub fn through_strands(&self) -> usize {
        (0..self.src)
            .filter(|&i| matches!(self.partner(Endpoint::Bottom(i)), Endpoint::Top(_)))
            .count()
    }

    /// Arcs as endpoint pairs, each listed once.
    pub fn arcs(&self) -> Vec<(Endpoint, Endpoint)> {
        self.pairs()
            .into_iter()
            .map(|(a, b)| (self.endpoint(a), self.endpoint(b)))
            .collect()
    }

    /// Vertical reflection: `n → m` becomes `m → n`.
    pub fn reflect(&self) -> Self {
        let flip = |e| match e {
            Endpoint::Bottom(i) => Endpoint::Top(i),
            Endpoint::Top(i) => Endpoint::Bottom(i),
        };
        Self::from_endpoints_unchecked(
            self.dst,
            self.src,
            self.arcs().into_iter().map(|(a, b)| (flip(a), flip(b))),
        )
    }

    /// Left-right mirror image, keeping source and target.
    pub fn mirror(&self) -> Self {
        let (s, d) = (self.src, self.dst);
        let flip = move |e| match e {
            Endpoint::Bottom(i) => Endpoint::Bottom(s - 1 - i),
            Endpoint::Top(i) => Endpoint::Top(d - 1 - i),
        };
        Self::from_endpoints_unchecked(s, d, self.arcs().into_iter().map(|(a, b)| (flip(a), flip(b))))
    }

    /// Horizontal juxtaposition with `self` on the left.
    pub fn tensor(&self, other: &Self) -> Self {
        let (s1, d1) = (self.src, self.dst);
        let shift = move |e| match e {
            Endpoint::Bottom(i) => Endpoint::Bottom(i + s1),
            Endpoint::Top(i) => Endpoint::Top(i + d1),
        };
        let arcs = self
            .arcs()
            .into_iter()
            .chain(other.arcs().into_iter().map(|(a, b)| (shift(a), shift(b))));
        Self::from_endpoints_unchecked(s1 + other.src, d1 + other.dst, arcs)
    }

    /// Stacks `self` on top of `below`; returns the resulting pairing and
    /// the number of closed loops created in the middle.
    pub fn compose(&self, below: &Self) -> Result<(Self, usize)> {
        if self.src != below.dst {
            return Err(Error::ArityMismatch {
                expected: self.src,
                found: below.dst,
            });
        }
        let (n, m, k) = (below.src, below.dst, self.dst);
        // Middle point j is Top(j) of `below` and Bottom(j) of `self`.
        let mut visited = vec![false; m];
        let mut pairs = Vec::with_capacity((n + k) / 2);

        // Follow a strand leaving an outer endpoint until it exits again.
        let walk = |start: Endpoint, from_top: bool, visited: &mut Vec<bool>| -> Endpoint {
            let mut in_top = from_top;
            let mut cur = if in_top { self.partner(start) } else { below.partner(start) };
            loop {
                match (in_top, cur) {
                    (true, Endpoint::Top(t)) => return Endpoint::Top(t),
                    (false, Endpoint::Bottom(b)) => return Endpoint::Bottom(b),
                    (true, Endpoint::Bottom(j)) => {
                        visited[j] = true;
                        in_top = false;
                        cur = below.partner(Endpoint::Top(j));
                    }
                    (false, Endpoint::Top(j)) => {
                        visited[j] = true;
                        in_top = true;
                        cur = self.partner(Endpoint::Bottom(j));
                    }
                }
            }
        };

        let mut seen_bottom = vec![false; n];
        let mut seen_top = vec![false; k];
        for b in 0..n {
            if seen_bottom[b] {
                continue;
            }
            seen_bottom[b] = true;
            let end = walk(Endpoint::Bottom(b), false, &mut visited);
            match end {
                Endpoint::Bottom(x) => seen_bottom[x] = true,
                Endpoint::Top(x) => seen_top[x] = true,
            }
            pairs.push((Endpoint::Bottom(b), end));
        }
        for t in 0..k {
            if seen_top[t] {
                continue;
            }
            seen_top[t] = true;
            let end = walk(Endpoint::Top(t), true, &mut visited);
            if let Endpoint::Top(x) = end {
                seen_top[x] = true;
            }
            pairs.push((Endpoint::Top(t), end));
        }

        let mut loops = 0;
        for j in 0..m {
            if visited[j] {
                continue;
            }
            loops += 1;
            let mut cur = j;
            loop {
                visited[cur] = true;
                let Endpoint::Bottom(next) = self.partner(Endpoint::Bottom(cur)) else {
                    unreachable!("outer strands already consumed")
                };
                visited[next] = true;
                let Endpoint::Top(back) = below.partner(Endpoint::Top(next)) else {
                    unreachable!("outer strands already consumed")
                };
                if back == j {
                    break;
                }
                cur = back;
            }
        }
        Ok((Self::from_endpoints_unchecked(n, k, pairs), loops))
    }

    /// Loops formed by joining top point `j` to bottom point `j` for every
    /// `j`. Only defined for square pairings.
    pub fn closure_loops(&self) -> Result<usize> {
        if self.src != self.dst {
            return Err(Error::NonSquare {
                src: self.src,
                dst: self.dst,
            });
        }
        let n = self.src;
        let node = |e: Endpoint| match e {
            Endpoint::Bottom(i) => i,
            Endpoint::Top(j) => n + j,
        };
        // Every node has degree two (one arc, one closure strand), so each
        // connected component is exactly one loop.
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                true
            } else {
                false
            }
        };
        let mut components = 2 * n;
        for (a, b) in self.arcs() {
            if union(node(a), node(b)) {
                components -= 1;
            }
        }
        for j in 0..n {
            if union(j, n + j) {
                components -= 1;
            }
        }
        let loops = components;
        Ok(loops)
    }

    /// Nested-parenthesis rendering; `|` separates bottom from top points.
    pub fn to_paren_string(&self) -> String {
        let mut s = String::with_capacity(self.partner.len() + 1);
        for (i, &p) in self.partner.iter().enumerate() {
            if i == self.src {
                s.push('|');
            }
            s.push(if (p as usize) > i { '(' } else { ')' });
        }
        if self.src == self.partner.len() {
            s.push('|');
        }
        s
    }

    /// All noncrossing pairings `src → dst`, in a deterministic order.
    pub fn enumerate(src: usize, dst: usize) -> Vec<Self> {
        let n = src + dst;
        if !n.is_multiple_of(2) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut partner = vec![0u32; n];
        enumerate_rec(0, n, &mut partner, &mut |p: &[u32]| {
            out.push(PlanarPairing {
                src,
                dst,
                partner: p.to_vec(),
            })
        });
        out.sort();
        out
    }
}

fn enumerate_rec(lo: usize, hi: usize, partner: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    // Matches points lo..hi; emits once every interval is filled.
    fn go(stack: &mut Vec<(usize, usize)>, partner: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
        let Some((lo, hi)) = stack.pop() else {
            emit(partner);
            return;
        };
        if lo >= hi {
            go(stack, partner, emit);
            stack.push((lo, hi));
            return;
        }
        for k in (lo + 1..hi).step_by(2) {
            partner[lo] = k as u32;
            partner[k] = lo as u32;
            stack.push((k + 1, hi));
            stack.push((lo + 1, k));
            go(stack, partner, emit);
            stack.pop();
            stack.pop();
        }
        stack.push((lo, hi));
    }
    let mut stack = vec![(lo, hi)];
    go(&mut stack, partner, emit);
}

fn raw_index(src: usize, dst: usize, e: Endpoint) -> usize {
    match e {
        Endpoint::Bottom(i) => i,
        Endpoint::Top(j) => src + dst - 1 - j,
    }
}

fn index_of(src: usize, dst: usize, e: Endpoint) -> Result<usize> {
    let ok = match e {
        Endpoint::Bottom(i) => i < src,
        Endpoint::Top(j) => j < dst,
    };
    if !ok {
        return Err(Error::InvalidPairing(format!("{e:?} is not a boundary point of {src} -> {dst}")));
    }
    Ok(raw_index(src, dst, e))
}

fn is_noncrossing(partner: &[u32]) -> bool {
    let mut stack = Vec::new();
    for (i, &p) in partner.iter().enumerate() {
        let p = p as usize;
        if p > i {
            stack.push(i);
        } else if stack.pop() != Some(p) {
            return false;
        }
    }
    stack.is_empty()
}

impl fmt::Debug for PlanarPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} {}", self.src, self.dst, self.to_paren_string())
    }
}
