//! Independent oracles and instance builders shared by the integration
//! tests and the acceptance runner. None of these call the routine they
//! are used to check.
#![allow(dead_code)]

use arbor::rational::{int, Q};
use arbor::sample;
use arbor::symplin::{plane_from_form, LagrangianPlane, Matrix, QuadraticForm, SymplecticSpace};
use arbor::trees::SignedRootedTree;
use num::{Signed, Zero};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Definiteness by unpivoted elimination: a symmetric matrix is positive
/// definite iff every pivot of plain Gaussian elimination is positive.
pub fn ldl_positive_definite(m: &Matrix) -> bool {
    let n = m.rows();
    let mut a: Vec<Vec<Q>> = m.to_rows();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let l = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &l * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    true
}

pub fn ldl_negative_definite(m: &Matrix) -> bool {
    ldl_positive_definite(&m.neg())
}

/// A polarization `(τ, ν)` as the image of the coordinate one under a
/// random symplectic matrix. Forms over it are then graphs `S` over `τ`.
pub struct Frame {
    pub space: SymplecticSpace,
    pub tau: LagrangianPlane,
    pub nu: LagrangianPlane,
}

impl Frame {
    pub fn random(rng: &mut impl Rng, n: usize) -> Self {
        let space = SymplecticSpace::standard(n);
        let g = sample::symplectic_matrix(rng, n, 1);
        let tau = LagrangianPlane::q_plane(&space).map(&g).unwrap();
        let nu = LagrangianPlane::p_plane(&space).map(&g).unwrap();
        Frame { space, tau, nu }
    }

    /// The plane with graph form `s` over `(τ, ν)`.
    pub fn plane(&self, s: &Matrix) -> LagrangianPlane {
        plane_from_form(&self.tau, &self.nu, &QuadraticForm::new(s.clone()).unwrap()).unwrap()
    }
}

pub fn pd(rng: &mut impl Rng, n: usize) -> Matrix {
    sample::positive_definite(rng, n, 2).into_matrix()
}

/// A nondegenerate symmetric matrix (retrying on singular draws).
pub fn nondegenerate(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let s = sample::symmetric(rng, n, 3);
        if !s.det().is_zero() {
            return s;
        }
    }
}

/// An indefinite form with a planted rational null vector: returns
/// `(Q, x)` with `Q(x) = 0`, `x ≠ 0`, `Q = Pᵀ D P` and `D = diag(a, −a, …)`.
pub fn indefinite_with_null(rng: &mut impl Rng, n: usize) -> (QuadraticForm, Vec<Q>) {
    assert!(n >= 2);
    let a = int(rng.gen_range(1..=4));
    let mut d = vec![a.clone(), -a];
    for _ in 2..n {
        let v = rng.gen_range(1..=4);
        d.push(int(if rng.gen_bool(0.5) { v } else { -v }));
    }
    let p = sample::unimodular(rng, n, 2);
    let q = p.transpose().mul(&Matrix::diagonal(&d)).mul(&p);
    let mut e = vec![Q::zero(); n];
    e[0] = int(1);
    e[1] = int(1);
    let x = p.inverse().unwrap().mul_vec(&e);
    (QuadraticForm::new(q).unwrap(), x)
}

/// Canonical string of a rooted signed tree given by parent pointers,
/// built bottom-up with sorted child lists. Independent of the library's
/// encoder.
pub fn oracle_canonical(n: usize, root: usize, adj: &[Vec<usize>], sign: &dyn Fn(usize, usize) -> i8) -> String {
    fn go(v: usize, parent: Option<usize>, root: usize, adj: &[Vec<usize>], sign: &dyn Fn(usize, usize) -> i8) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&c| Some(c) != parent)
            .map(|&c| {
                let tag = if v == root { 'r' } else if sign(v, c) > 0 { 'p' } else { 'm' };
                format!("{tag}{}", go(c, Some(v), root, adj, sign))
            })
            .collect();
        kids.sort();
        format!("[{}]", kids.join(","))
    }
    let _ = n;
    go(root, None, root, adj, sign)
}

/// Labelled trees on `k` vertices from Prüfer sequences.
pub fn prufer_trees(k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 1 {
        return vec![vec![]];
    }
    if k == 2 {
        return vec![vec![(0, 1)]];
    }
    let len = k - 2;
    let total = k.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % k);
            c /= k;
        }
        let mut degree = vec![1usize; k];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(k - 1);
        for &s in &seq {
            let leaf = (0..k).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// Isomorphism classes of signed rooted trees on exactly `k` vertices,
/// by brute force over all labelled trees rooted at `0` and all sign
/// assignments to the non-root edges.
pub fn brute_force_classes(k: usize) -> BTreeSet<String> {
    let mut classes = BTreeSet::new();
    for edges in prufer_trees(k) {
        let mut adj = vec![Vec::new(); k];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let signed: Vec<(usize, usize)> = edges.iter().copied().filter(|&(u, v)| u != 0 && v != 0).collect();
        for mask in 0..1u32 << signed.len() {
            let sign = |a: usize, b: usize| {
                let i = signed.iter().position(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a)).unwrap();
                if mask >> i & 1 == 1 { -1 } else { 1 }
            };
            classes.insert(oracle_canonical(k, 0, &adj, &sign));
        }
    }
    classes
}

/// The same canonical string for a library tree.
pub fn canonical_of(t: &SignedRootedTree) -> String {
    let k = t.vertex_count();
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in t.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    oracle_canonical(k, t.root(), &adj, &|a, b| t.sign(a, b).unwrap_or(1))
}

/// Explicit gluing data for line bundles on the model of `t`: the cover is
/// the root neighborhood plus one open per root component, each with its
/// own (recursively enumerated) data, and a sign on each connected
/// overlap. Returns every assignment as a sign vector.
pub fn cech_gluings(t: &SignedRootedTree) -> Vec<Vec<i8>> {
    fn sub(v: usize, parent: usize, adj: &[Vec<usize>]) -> Vec<Vec<i8>> {
        let kids: Vec<usize> = adj[v].iter().copied().filter(|&c| c != parent).collect();
        let mut acc: Vec<Vec<i8>> = vec![vec![]];
        for c in kids {
            let inner = sub(c, v, adj);
            let mut next = Vec::new();
            for a in &acc {
                for s in [1i8, -1] {
                    for g in &inner {
                        let mut w = a.clone();
                        w.push(s);
                        w.extend(g);
                        next.push(w);
                    }
                }
            }
            acc = next;
        }
        acc
    }
    let k = t.vertex_count();
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in t.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    sub(t.root(), usize::MAX, &adj)
}

/// Coorientation choices of the root hypersurface: one sign per root
/// component, realized as distinct signed trees up to relabeling the
/// components' signs. Counted by enumeration.
pub fn coorientation_choices(t: &SignedRootedTree) -> usize {
    let comps = t.components();
    let mut seen = BTreeSet::new();
    for mask in 0..1u32 << comps.len() {
        let flips: Vec<usize> = comps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c).collect();
        let n = t.negate_components(&flips).unwrap();
        // A fully signed tree: the old signs plus a coorientation on each root edge.
        let mut full: BTreeMap<(usize, usize), i8> = n.signs().clone();
        for (i, &c) in comps.iter().enumerate() {
            full.insert((t.root().min(c), t.root().max(c)), if mask >> i & 1 == 1 { -1 } else { 1 });
        }
        seen.insert(full);
    }
    seen.len()
}

/// Zero pattern of `Ω(F)` in an adapted basis, 1-based: `M_ab = 0` for
/// `a + b ≤ 2n`, nonzero on `a + b = 2n + 1`.
pub fn in_flag_component(m: &Matrix) -> Option<Vec<i8>> {
    let dim = m.rows();
    let n = dim / 2;
    if !m.is_antisymmetric() || m.det().is_zero() {
        return None;
    }
    for a in 1..=dim {
        for b in 1..=dim {
            if a + b <= dim && !m[(a - 1, b - 1)].is_zero() {
                return None;
            }
        }
    }
    let mut signs = Vec::new();
    for a in 1..=n {
        let v = &m[(a - 1, dim - a)];
        if v.is_zero() {
            return None;
        }
        signs.push(if v.is_positive() { 1 } else { -1 });
    }
    Some(signs)
}
