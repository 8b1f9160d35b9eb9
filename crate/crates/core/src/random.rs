//! Seeded generators for complexes and maps. Everything is a pure function
//! of the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{direct_sum, realize_graded, ChainComplex, ChainMap, GradedMap};
use crate::exactla::{int, Matrix, Scalar};
use crate::simpobj::cyl::{cone_const, cyl, cyl_const, cyl_map, Cylinder};
use crate::simpobj::tensor::boxtimes;
use crate::simpobj::{constant, SimplicialMap, SimplicialObject};
use crate::simpsets::delta;

pub const DEFAULT_MAX_DIM: usize = 6;
pub const DEFAULT_MAX_DEG: usize = 4;

/// Derives the seed of case `case` in a sweep started from `seed`.
pub fn case_seed(seed: u64, case: u64) -> u64 {
    let mut z = seed ^ case.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct Gen {
    rng: ChaCha8Rng,
    pub max_dim: usize,
    pub max_deg: usize,
}

impl Gen {
    pub fn new(seed: u64, max_dim: usize, max_deg: usize) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_dim,
            max_deg,
        }
    }

    pub fn with_defaults(seed: u64) -> Self {
        Self::new(seed, DEFAULT_MAX_DIM, DEFAULT_MAX_DEG)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.rng.gen_range(0..n)
        }
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Uniform in `{-2, ..., 2}`.
    pub fn small(&mut self) -> Scalar {
        int(self.rng.gen_range(-2..=2))
    }

    pub fn nonzero_small(&mut self) -> Scalar {
        let v = *[-2i64, -1, 1, 2].choose(&mut self.rng).unwrap();
        int(v)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols).map(|_| self.small()).collect();
        Matrix::from_vec(rows, cols, data)
    }

    /// A sparse matrix: each entry is nonzero with probability `p`.
    pub fn sparse(&mut self, rows: usize, cols: usize, p: f64) -> Matrix {
        let data = (0..rows * cols)
            .map(|_| {
                if self.coin(p) {
                    self.nonzero_small()
                } else {
                    int(0)
                }
            })
            .collect();
        Matrix::from_vec(rows, cols, data)
    }

    /// A permuted unitriangular matrix; its inverse has integer entries.
    pub fn unimodular(&mut self, n: usize) -> Matrix {
        let mut m = Matrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                if self.coin(0.4) {
                    m.set(i, j, self.small());
                }
            }
        }
        let mut u = Matrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                if self.coin(0.4) {
                    u.set(i, j, self.small());
                }
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        (&m * &u).select_rows(&perm)
    }

    /// An invertible matrix, possibly with non-integral inverse.
    pub fn invertible(&mut self, n: usize) -> Matrix {
        let mut m = self.unimodular(n);
        for i in 0..n {
            if self.coin(0.3) {
                let s = self.nonzero_small();
                for j in 0..n {
                    let v = m.get(i, j) * &s;
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    fn top(&mut self) -> usize {
        self.rng.gen_range(0..=self.max_deg)
    }

    /// A complex in split form: `h[n]` homology generators in degree `n` and
    /// `e[n]` contractible pairs joining degrees `n + 1` and `n`.
    pub fn split_complex(&mut self, h: &[usize], e: &[usize]) -> ChainComplex {
        let len = h.len().max(e.len() + 1);
        let hn = |n: usize| h.get(n).copied().unwrap_or(0);
        let en = |n: usize| e.get(n).copied().unwrap_or(0);
        let up = |n: usize| if n == 0 { 0 } else { en(n - 1) };
        let dims: Vec<usize> = (0..len).map(|n| up(n) + hn(n) + en(n)).collect();
        let mut diffs = Vec::new();
        for n in 1..len {
            let mut d = Matrix::zeros(dims[n - 1], dims[n]);
            // degree n-1 layout: [upper | homology | lower], lower pairs with upper of degree n
            let iso = self.invertible(en(n - 1));
            d.set_block(up(n - 1) + hn(n - 1), 0, &iso);
            diffs.push(d);
        }
        ChainComplex::new(dims, diffs).expect("split form")
    }

    fn profile(&mut self, room: &[usize], acyclic: bool) -> (Vec<usize>, Vec<usize>) {
        let len = room.len();
        let mut h = vec![0; len];
        let mut e = vec![0; len.saturating_sub(1)];
        let mut used_up = 0;
        for n in 0..len {
            let free = room[n].saturating_sub(used_up);
            let next_room = room.get(n + 1).copied().unwrap_or(0);
            let en = if n + 1 < len {
                self.below(free.min(next_room) + 1)
            } else {
                0
            };
            if n + 1 < len {
                e[n] = en;
            }
            if !acyclic {
                h[n] = self.below(free - en + 1).min(2 + self.below(2));
            }
            used_up = en;
        }
        (h, e)
    }

    /// A random complex with degrees `0..=top`, each of dimension at most
    /// `max_dim`, conjugated away from split form.
    pub fn complex(&mut self) -> ChainComplex {
        let top = self.top();
        let room = vec![self.max_dim; top + 1];
        let (h, e) = self.profile(&room, false);
        let c = self.split_complex(&h, &e);
        self.conjugate(&c).0
    }

    /// A random acyclic complex fitting inside `room`.
    pub fn acyclic(&mut self, room: &[usize]) -> ChainComplex {
        let (h, e) = self.profile(room, true);
        let c = self.split_complex(&h, &e);
        self.conjugate(&c).0
    }

    /// Applies random unimodular base changes; returns the new complex and
    /// the isomorphism onto it.
    pub fn conjugate(&mut self, c: &ChainComplex) -> (ChainComplex, ChainMap) {
        let ps: Vec<Matrix> = c.dims().iter().map(|&k| self.unimodular(k)).collect();
        let pinv: Vec<Matrix> = ps
            .iter()
            .map(|p| p.inverse().expect("unimodular"))
            .collect();
        let diffs = (1..c.len())
            .map(|n| &(&ps[n - 1] * &*c.d(n)) * &pinv[n])
            .collect();
        let out = ChainComplex::new(c.dims().to_vec(), diffs).expect("conjugate of a complex");
        let iso = ChainMap::new(c, &out, ps).expect("base change");
        (out, iso)
    }

    pub fn graded(&mut self, target: &[usize], source: &[usize]) -> GradedMap {
        let len = target.len().max(source.len());
        GradedMap::new(
            (0..len)
                .map(|n| {
                    self.matrix(
                        target.get(n).copied().unwrap_or(0),
                        source.get(n).copied().unwrap_or(0),
                    )
                })
                .collect(),
        )
    }

    pub fn invertible_graded(&mut self, dims: &[usize]) -> GradedMap {
        GradedMap::new(dims.iter().map(|&k| self.invertible(k)).collect())
    }

    /// `d h + h d` for a random `h`.
    pub fn null_homotopic(&mut self, a: &ChainComplex, b: &ChainComplex) -> ChainMap {
        let len = a.len().max(b.len());
        let h: Vec<Matrix> = (0..len)
            .map(|n| self.sparse(b.dim(n + 1), a.dim(n), 0.3))
            .collect();
        let comps = (0..len)
            .map(|n| {
                let mut m = &*b.d(n + 1) * &h[n];
                if n >= 1 {
                    m = &m + &(&h[n - 1] * &*a.d(n));
                }
                m
            })
            .collect();
        ChainMap::new(a, b, comps).expect("boundary of a homotopy")
    }

    /// A random chain map with random effect on homology.
    pub fn map(&mut self, a: &ChainComplex, b: &ChainComplex) -> ChainMap {
        let g = self.graded(&b.betti(), &a.betti());
        let core = realize_graded(a, b, &g);
        core.add(&self.null_homotopic(a, b)).expect("parallel")
    }

    /// A random map `A -> A` that is a quasi-isomorphism.
    pub fn self_qis(&mut self, a: &ChainComplex) -> ChainMap {
        let g = self.invertible_graded(&a.betti());
        realize_graded(a, a, &g)
            .add(&self.null_homotopic(a, a))
            .expect("parallel")
    }

    /// A quasi-isomorphism out of `a` into a larger complex `P(A ⊕ E)` with
    /// `E` acyclic.
    pub fn qis_from(&mut self, a: &ChainComplex) -> ChainMap {
        let len = (a.len() + self.below(2)).min(self.max_deg + 1).max(a.len());
        let room: Vec<usize> = (0..len)
            .map(|n| self.max_dim.saturating_sub(a.dim(n)))
            .collect();
        let e = self.acyclic(&room);
        let s = direct_sum(&[a, &e]);
        let (b, iso) = self.conjugate(&s.sum);
        let g = self.self_qis(a);
        let f = iso
            .compose(&s.inclusions[0])
            .expect("composable")
            .compose(&g)
            .expect("composable");
        f.add(&self.null_homotopic(a, &b)).expect("parallel")
    }

    /// A quasi-isomorphism into `b` from a larger complex.
    pub fn qis_onto(&mut self, b: &ChainComplex) -> ChainMap {
        let len = (b.len() + self.below(2)).min(self.max_deg + 1).max(b.len());
        let room: Vec<usize> = (0..len)
            .map(|n| self.max_dim.saturating_sub(b.dim(n)))
            .collect();
        let e = self.acyclic(&room);
        let s = direct_sum(&[b, &e]);
        let (a, iso) = self.conjugate(&s.sum);
        let back = iso.quasi_inverse().expect("isomorphism");
        let g = self.self_qis(b);
        let f = g
            .compose(&s.projections[0])
            .expect("composable")
            .compose(&back)
            .expect("composable");
        f.add(&self.null_homotopic(&a, b)).expect("parallel")
    }

    /// Either a quasi-isomorphism out of `a` or a map into an independent
    /// random complex.
    pub fn maybe_qis(&mut self, a: &ChainComplex, want_qis: bool) -> ChainMap {
        if want_qis {
            self.qis_from(a)
        } else {
            let b = self.complex();
            self.map(a, &b)
        }
    }
}

impl Gen {
    /// `Cyl(f × Δ, g × Δ)` for random `f : X -> Y`, `g : X -> Z`.
    pub fn cylinder(&mut self, big_n: usize) -> Cylinder {
        let (x, y, z) = (self.complex(), self.complex(), self.complex());
        let f = self.map(&x, &y);
        let g = self.map(&x, &z);
        cyl_const(&f, &g, big_n).expect("common source")
    }

    /// A constant object, a cone, a cylinder or `Δ[1] ⊠ (A × Δ)`.
    pub fn simplicial(&mut self, big_n: usize) -> SimplicialObject {
        match self.below(4) {
            0 => constant(&self.complex(), big_n),
            1 => {
                let (a, b) = (self.complex(), self.complex());
                let f = self.map(&a, &b);
                cone_const(&f, big_n).expect("cone of a chain map").object
            }
            2 => self.cylinder(big_n).object,
            _ => {
                let k = delta(1, big_n).expect("standard simplex");
                boxtimes(&k, &constant(&self.complex(), big_n))
                    .expect("same truncation")
                    .object
            }
        }
    }

    /// `Cyl(f, g) -> Cyl(αf, γg)` induced by `α`, `γ` and the identity on
    /// the common source. It is levelwise a quasi-isomorphism when
    /// `want_qis` holds; otherwise `α` is a map into a random complex.
    pub fn levelwise_map(&mut self, big_n: usize, want_qis: bool) -> SimplicialMap {
        let src = self.cylinder(big_n);
        let alpha = self.maybe_qis(src.y().level(0), want_qis);
        let gamma = self.qis_from(src.z().level(0));
        let (y2, z2) = (
            constant(alpha.target(), big_n),
            constant(gamma.target(), big_n),
        );
        let f2 = SimplicialMap::constant_between(&src.f.level(0).then(&alpha), src.source(), &y2);
        let g2 = SimplicialMap::constant_between(&src.g.level(0).then(&gamma), src.source(), &z2);
        let tgt = cyl(&f2, &g2).expect("common source");
        let a = SimplicialMap::constant_between(&alpha, src.y(), &y2);
        let b = SimplicialMap::identity(src.source());
        let c = SimplicialMap::constant_between(&gamma, src.z(), &z2);
        cyl_map(&src, &tgt, &a, &b, &c).expect("commuting by construction")
    }
}

/// A random complex depending only on the arguments.
pub fn random_complex(seed: u64, max_dim: usize, max_deg: usize) -> ChainComplex {
    Gen::new(seed, max_dim, max_deg).complex()
}

/// A random chain map between two random complexes.
pub fn random_map(seed: u64, max_dim: usize, max_deg: usize) -> ChainMap {
    let mut g = Gen::new(seed, max_dim, max_deg);
    let a = g.complex();
    let b = g.complex();
    g.map(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(random_complex(7, 6, 4), random_complex(7, 6, 4));
        assert_eq!(random_map(7, 6, 4), random_map(7, 6, 4));
    }

    #[test]
    fn bounds_and_qis() {
        for s in 0..40 {
            let mut g = Gen::with_defaults(case_seed(3, s));
            let a = g.complex();
            assert!(a.len() <= 5 && a.dims().iter().all(|&k| k <= 6));
            let f = g.qis_from(&a);
            assert!(f.is_qis(), "seed {s}");
            assert!(f.target().dims().iter().all(|&k| k <= 6));
            let p = g.qis_onto(&a);
            assert!(p.is_qis(), "seed {s}");
            let e = g.acyclic(&[3, 3, 3]);
            assert!(e.is_acyclic());
        }
    }

    #[test]
    fn simplicial_generators() {
        let mut g = Gen::new(8, 3, 2);
        for _ in 0..6 {
            let x = g.simplicial(3);
            x.check_identities().unwrap();
            x.simple().unwrap();
        }
        for want in [true, false] {
            let f = g.levelwise_map(3, want);
            f.verify().unwrap();
            assert!(!want || f.is_levelwise_qis());
        }
    }
}
