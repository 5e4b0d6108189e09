//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's counting code.

#![allow(dead_code)]

use hominv::rational::{int, one, zero};
use hominv::Rational;

/// Sum over all maps V(F) -> [n] of Π a_φ(v) Π B_φ(u)φ(v).
pub fn brute_hom(vertices: usize, edges: &[(usize, usize)], a: &[Rational], b: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if vertices == 0 {
        return one();
    }
    if n == 0 {
        return zero();
    }
    let mut phi = vec![0usize; vertices];
    let mut total = zero();
    loop {
        let mut term: Rational = phi.iter().map(|&i| a[i].clone()).product();
        for &(u, v) in edges {
            term *= &b[phi[u]][phi[v]];
        }
        total += term;
        let mut pos = 0;
        loop {
            if pos == vertices {
                return total;
            }
            phi[pos] += 1;
            if phi[pos] < n {
                break;
            }
            phi[pos] = 0;
            pos += 1;
        }
    }
}

/// Integer homomorphism count with unit vertex weights, by backtracking that
/// multiplies in each edge as soon as both ends are placed.
pub struct IntHom {
    b: Vec<Vec<i64>>,
}

impl IntHom {
    pub fn new(b: Vec<Vec<i64>>) -> Self {
        IntHom { b }
    }

    pub fn count(&self, vertices: usize, edges: &[(usize, usize)]) -> i128 {
        let mut back: Vec<Vec<usize>> = vec![Vec::new(); vertices];
        for &(u, v) in edges {
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            back[hi].push(lo);
        }
        let mut phi = vec![0usize; vertices];
        self.extend(0, 1, &back, &mut phi)
    }

    fn extend(&self, v: usize, acc: i128, back: &[Vec<usize>], phi: &mut [usize]) -> i128 {
        if v == phi.len() {
            return acc;
        }
        let mut total = 0;
        for i in 0..self.b.len() {
            let mut w = acc;
            for &u in &back[v] {
                let x = if u == v { self.b[i][i] } else { self.b[phi[u]][i] };
                w *= x as i128;
                if w == 0 {
                    break;
                }
            }
            if w != 0 {
                phi[v] = i;
                total += self.extend(v + 1, w, back, phi);
            }
        }
        total
    }
}

/// All permutations of [n] preserving a and B.
pub fn brute_automorphisms(a: &[Rational], b: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let ok = (0..n).all(|i| a[p[i]] == a[i] && (0..n).all(|j| b[p[i]][p[j]] == b[i][j]));
        if ok {
            out.push(p.to_vec());
        }
    });
    out
}

fn permutations(items: &mut Vec<usize>, start: usize, visit: &mut dyn FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Orbits of the group on [n]^k, counted by flood fill over tuples.
pub fn brute_orbit_count(group: &[Vec<usize>], n: usize, k: usize) -> usize {
    let total = n.pow(k as u32);
    let decode = |mut x: usize| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        t
    };
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &i| acc * n + i);
    let mut seen = vec![false; total];
    let mut orbits = 0;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            let t = decode(x);
            for g in group {
                let image: Vec<usize> = t.iter().map(|&i| g[i]).collect();
                let y = encode(&image);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    orbits
}

pub fn is_transitive(group: &[Vec<usize>], n: usize) -> bool {
    (0..n).all(|v| group.iter().any(|g| g[0] == v))
}

pub fn is_generously_transitive(group: &[Vec<usize>], n: usize) -> bool {
    (0..n).all(|u| (0..n).all(|v| group.iter().any(|g| g[u] == v && g[v] == u)))
}

/// Number of connected components, by depth-first search.
pub fn component_count(vertices: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); vertices];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; vertices];
    let mut count = 0;
    for s in 0..vertices {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

pub fn rational_matrix(b: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    b.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect()
}

pub fn integer_matrix(b: &[Vec<Rational>]) -> Option<Vec<Vec<i64>>> {
    b.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    x.is_integer()
                        .then(|| i64::try_from(x.to_integer()).ok())
                        .flatten()
                })
                .collect()
        })
        .collect()
}
