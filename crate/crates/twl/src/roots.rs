//! Type A_{n-1} roots ε_i − ε_j and affine roots (β, m).

use std::fmt;

use crate::error::{Result, TwlError};

/// ε_i − ε_j with 1-based indices, i ≠ j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteRoot {
    pub i: usize,
    pub j: usize,
}

impl FiniteRoot {
    pub fn new(i: usize, j: usize) -> Result<FiniteRoot> {
        if i == j || i == 0 || j == 0 {
            return Err(TwlError::Domain(format!("ε_{i} − ε_{j} is not a root")));
        }
        Ok(FiniteRoot { i, j })
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn neg(&self) -> FiniteRoot {
        FiniteRoot { i: self.j, j: self.i }
    }

    /// Coefficient of ε_k.
    fn coord(&self, k: usize) -> i32 {
        (k == self.i) as i32 - (k == self.j) as i32
    }

    /// Inner product with the ε_k orthonormal.
    pub fn dot(&self, other: &FiniteRoot) -> i32 {
        other.coord(self.i) - other.coord(self.j)
    }

    /// Indices swapped by σ_self.
    pub fn swap_index(&self, k: usize) -> usize {
        if k == self.i {
            self.j
        } else if k == self.j {
            self.i
        } else {
            k
        }
    }

    /// σ_self(γ).
    pub fn reflect(&self, gamma: &FiniteRoot) -> FiniteRoot {
        FiniteRoot { i: self.swap_index(gamma.i), j: self.swap_index(gamma.j) }
    }

    /// β + γ when it is a root.
    pub fn sum(&self, other: &FiniteRoot) -> Option<FiniteRoot> {
        if self.j == other.i && self.i != other.j {
            Some(FiniteRoot { i: self.i, j: other.j })
        } else if self.i == other.j && self.j != other.i {
            Some(FiniteRoot { i: other.i, j: self.j })
        } else {
            None
        }
    }
}

impl fmt::Display for FiniteRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i, self.j)
    }
}

/// ⟨γ, β⟩ = 2(γ, β)/(β, β); all roots have squared length 2.
pub fn pairing(gamma: &FiniteRoot, beta: &FiniteRoot) -> i32 {
    gamma.dot(beta)
}

/// (β, m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: FiniteRoot,
    pub m: i64,
}

impl AffineRoot {
    pub fn new(i: usize, j: usize, m: i64) -> Result<AffineRoot> {
        Ok(AffineRoot { root: FiniteRoot::new(i, j)?, m })
    }

    pub fn is_positive(&self) -> bool {
        if self.root.is_positive() {
            self.m >= 0
        } else {
            self.m > 0
        }
    }

    pub fn neg(&self) -> AffineRoot {
        AffineRoot { root: self.root.neg(), m: -self.m }
    }

    /// m·n + (j − i); positive exactly on positive roots, 1 exactly on simple roots.
    pub fn height(&self, n: usize) -> i64 {
        self.m * n as i64 + self.root.j as i64 - self.root.i as i64
    }

    /// α̇₀ = (ε_n − ε_1, 1) for idx 0, α̇_idx = (ε_idx − ε_{idx+1}, 0) otherwise.
    pub fn simple(n: usize, idx: usize) -> AffineRoot {
        assert!(n >= 2 && idx < n, "simple root index {idx} out of range for n = {n}");
        if idx == 0 {
            AffineRoot { root: FiniteRoot { i: n, j: 1 }, m: 1 }
        } else {
            AffineRoot { root: FiniteRoot { i: idx, j: idx + 1 }, m: 0 }
        }
    }

    pub fn simple_index(&self, n: usize) -> Option<usize> {
        let r = self.root;
        if self.m == 1 && r.i == n && r.j == 1 {
            Some(0)
        } else if self.m == 0 && r.j == r.i + 1 && r.j <= n {
            Some(r.i)
        } else {
            None
        }
    }

    /// σ_self(γ̇) = (σ_β(γ), level(γ̇) − ⟨γ, β⟩·level(self)).
    pub fn reflect(&self, gamma: &AffineRoot) -> AffineRoot {
        AffineRoot {
            root: self.root.reflect(&gamma.root),
            m: gamma.m - pairing(&gamma.root, &self.root) as i64 * self.m,
        }
    }

    pub fn fits(&self, n: usize) -> bool {
        self.root.i <= n && self.root.j <= n
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a[{},{},{}]", self.root.i, self.root.j, self.m)
    }
}

pub fn affine_reflect(beta: &AffineRoot, gamma: &AffineRoot) -> AffineRoot {
    beta.reflect(gamma)
}

/// [α̇₀, α̇₁, …, α̇_{n−1}].
pub fn simple_roots(n: usize) -> Result<Vec<AffineRoot>> {
    if n < 2 {
        return Err(TwlError::Domain(format!("need n ≥ 2, got {n}")));
    }
    Ok((0..n).map(|idx| AffineRoot::simple(n, idx)).collect())
}

/// A word ȧ₁…ȧ_r of simple-root indices and a simple index ȧ with σ_{ȧ₁}⋯σ_{ȧ_r}(ȧ) = β̇.
pub fn reduce_to_simple(beta: &AffineRoot, n: usize) -> Result<(Vec<usize>, usize)> {
    if !beta.fits(n) || n < 2 {
        return Err(TwlError::Domain(format!("{beta} is not a root for n = {n}")));
    }
    let simple: Vec<AffineRoot> = (0..n).map(|i| AffineRoot::simple(n, i)).collect();
    let mut cur = if beta.is_positive() { *beta } else { beta.neg() };
    let mut word = Vec::new();
    while cur.height(n) > 1 {
        let h = cur.height(n);
        let (idx, next) = simple
            .iter()
            .enumerate()
            .map(|(idx, a)| (idx, a.reflect(&cur)))
            .find(|(_, r)| r.is_positive() && r.height(n) < h)
            .expect("a non-simple positive affine root has a descent");
        word.push(idx);
        cur = next;
    }
    let target = cur.simple_index(n).expect("height one roots are simple");
    if !beta.is_positive() {
        word.push(target);
    }
    Ok((word, target))
}

/// Applies σ_{ȧ₁}⋯σ_{ȧ_r} (rightmost first) to γ̇.
pub fn apply_word(word: &[usize], gamma: &AffineRoot, n: usize) -> AffineRoot {
    word.iter().rev().fold(*gamma, |g, &idx| AffineRoot::simple(n, idx).reflect(&g))
}
