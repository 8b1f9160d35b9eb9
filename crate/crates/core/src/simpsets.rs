//! Finite simplicial sets truncated at a fixed level, with the small gadgets
//! used to build suspensions, cogroup structures and homotopies.
//!
//! Vertex convention: the face `d^i` omits vertex `i`, so the coface
//! `d^0 : Δ[0] -> Δ[1]` picks vertex 1 and `d^1` picks vertex 0.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simplicial set known up to level `truncation()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSimplicialSet {
    names: Vec<Vec<String>>,
    // faces[n][i][x] for 1 <= n <= N; faces[0] is empty.
    faces: Vec<Vec<Vec<usize>>>,
    // degens[n][j][x] : level n -> level n + 1, for n < N.
    degens: Vec<Vec<Vec<usize>>>,
    basepoint: Option<usize>,
}

/// Levelwise maps of simplex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSetMap {
    pub levels: Vec<Vec<usize>>,
}

impl FinSimplicialSet {
    /// Builds and checks every simplicial identity.
    pub fn new(
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
        basepoint: Option<usize>,
    ) -> Result<Self> {
        let k = FinSimplicialSet {
            names,
            faces,
            degens,
            basepoint,
        };
        k.check()?;
        Ok(k)
    }

    pub fn truncation(&self) -> usize {
        self.names.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.names[n].len()
    }

    pub fn names(&self, n: usize) -> &[String] {
        &self.names[n]
    }

    pub fn name(&self, n: usize, x: usize) -> &str {
        &self.names[n][x]
    }

    pub fn index_of(&self, n: usize, name: &str) -> Option<usize> {
        self.names[n].iter().position(|s| s == name)
    }

    /// `d_i x` for `x` at level `n >= 1`.
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    /// `s_j x` for `x` at level `n < N`.
    pub fn degen(&self, n: usize, j: usize, x: usize) -> usize {
        self.degens[n][j][x]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn is_pointed(&self) -> bool {
        self.basepoint.is_some()
    }

    /// Index of the totally degenerate simplex on the basepoint at level `n`.
    pub fn basepoint_at(&self, n: usize) -> Option<usize> {
        let mut x = self.basepoint?;
        for m in 0..n {
            x = self.degen(m, 0, x);
        }
        Some(x)
    }

    /// Nondegenerate simplices of level `n`, in index order.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        let mut hit = vec![false; self.size(n)];
        if n > 0 {
            for s in &self.degens[n - 1] {
                for &y in s {
                    hit[y] = true;
                }
            }
        }
        (0..self.size(n)).filter(|&x| !hit[x]).collect()
    }

    fn check(&self) -> Result<()> {
        let big_n = self
            .names
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Invalid("no levels".into()))?;
        let bad = |msg: String| Err(Error::Invalid(msg));
        if self.faces.len() != big_n + 1 || self.degens.len() != big_n {
            return bad("wrong number of face or degeneracy levels".into());
        }
        for n in 0..=big_n {
            let mut seen = std::collections::HashSet::new();
            if !self.names[n].iter().all(|s| seen.insert(s)) {
                return bad(format!("duplicate simplex names at level {n}"));
            }
            let want = if n == 0 { 0 } else { n + 1 };
            if self.faces[n].len() != want {
                return bad(format!("level {n} needs {want} face maps"));
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                if f.len() != self.size(n) || f.iter().any(|&y| y >= self.size(n - 1)) {
                    return bad(format!("face d_{i} at level {n} is malformed"));
                }
            }
            if n < big_n {
                if self.degens[n].len() != n + 1 {
                    return bad(format!("level {n} needs {} degeneracies", n + 1));
                }
                for (j, s) in self.degens[n].iter().enumerate() {
                    if s.len() != self.size(n) || s.iter().any(|&y| y >= self.size(n + 1)) {
                        return bad(format!("degeneracy s_{j} at level {n} is malformed"));
                    }
                }
            }
        }
        if let Some(b) = self.basepoint {
            if b >= self.size(0) {
                return bad("basepoint out of range".into());
            }
        }
        for n in 2..=big_n {
            for x in 0..self.size(n) {
                for j in 1..=n {
                    for i in 0..j {
                        if self.face(n - 1, i, self.face(n, j, x))
                            != self.face(n - 1, j - 1, self.face(n, i, x))
                        {
                            return bad(format!("d_{i} d_{j} != d_{} d_{i} at level {n}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..big_n {
            for x in 0..self.size(n) {
                for j in 0..=n {
                    let y = self.degen(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, i, y);
                        let ok = if i < j {
                            n >= 1 && lhs == self.degen(n - 1, j - 1, self.face(n, i, x))
                        } else if i == j || i == j + 1 {
                            lhs == x
                        } else {
                            n >= 1 && lhs == self.degen(n - 1, j, self.face(n, i - 1, x))
                        };
                        if !ok {
                            return bad(format!("d_{i} s_{j} identity fails at level {n}"));
                        }
                    }
                    if n + 1 < big_n {
                        for i in 0..=j {
                            if self.degen(n + 1, i, y)
                                != self.degen(n + 1, j + 1, self.degen(n, i, x))
                            {
                                return bad(format!("s_{i} s_{j} identity fails at level {n}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The same simplicial set with a chosen basepoint.
    pub fn pointed_at(&self, vertex: usize) -> Result<Self> {
        if vertex >= self.size(0) {
            return Err(Error::Invalid("basepoint out of range".into()));
        }
        let mut k = self.clone();
        k.basepoint = Some(vertex);
        Ok(k)
    }

    fn require_level(&self, need: usize) -> Result<()> {
        if self.truncation() < need {
            return Err(Error::Truncation {
                needed: need,
                available: self.truncation(),
            });
        }
        Ok(())
    }
}

impl SimplicialSetMap {
    pub fn identity(k: &FinSimplicialSet) -> Self {
        SimplicialSetMap {
            levels: (0..=k.truncation())
                .map(|n| (0..k.size(n)).collect())
                .collect(),
        }
    }

    /// The map onto the basepoint of `target`.
    pub fn constant(source: &FinSimplicialSet, target: &FinSimplicialSet, vertex: usize) -> Self {
        let mut levels = Vec::new();
        let mut v = vertex;
        for n in 0..=source.truncation() {
            levels.push(vec![v; source.size(n)]);
            if n < target.truncation() {
                v = target.degen(n, 0, v);
            }
        }
        SimplicialSetMap { levels }
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.levels[n][x]
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &SimplicialSetMap) -> SimplicialSetMap {
        SimplicialSetMap {
            levels: f
                .levels
                .iter()
                .enumerate()
                .map(|(n, l)| l.iter().map(|&x| self.levels[n][x]).collect())
                .collect(),
        }
    }

    /// Checks compatibility with faces, degeneracies and basepoints.
    pub fn verify(&self, src: &FinSimplicialSet, tgt: &FinSimplicialSet) -> Result<()> {
        let big_n = src.truncation();
        let bad = |msg: String| Err(Error::Invalid(msg));
        if tgt.truncation() < big_n || self.levels.len() != big_n + 1 {
            return bad("map has the wrong number of levels".into());
        }
        for n in 0..=big_n {
            if self.levels[n].len() != src.size(n)
                || self.levels[n].iter().any(|&y| y >= tgt.size(n))
            {
                return bad(format!("level {n} of the map is malformed"));
            }
        }
        for n in 1..=big_n {
            for x in 0..src.size(n) {
                for i in 0..=n {
                    if self.apply(n - 1, src.face(n, i, x)) != tgt.face(n, i, self.apply(n, x)) {
                        return bad(format!("map does not commute with d_{i} at level {n}"));
                    }
                }
            }
        }
        for n in 0..big_n {
            for x in 0..src.size(n) {
                for j in 0..=n {
                    if self.apply(n + 1, src.degen(n, j, x)) != tgt.degen(n, j, self.apply(n, x)) {
                        return bad(format!("map does not commute with s_{j} at level {n}"));
                    }
                }
            }
        }
        if let (Some(a), Some(b)) = (src.basepoint, tgt.basepoint) {
            if self.apply(0, a) != b {
                return bad("map does not preserve basepoints".into());
            }
        }
        Ok(())
    }
}

fn monotone(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(k, n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n, 0, &mut Vec::new(), &mut out);
    out
}

fn seq_name(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect()
}

/// Builds a simplicial set whose simplices are sequences, with faces
/// deleting and degeneracies repeating an entry.
fn from_sequences(
    levels: Vec<Vec<Vec<usize>>>,
    name: impl Fn(&[usize]) -> String,
) -> FinSimplicialSet {
    let big_n = levels.len() - 1;
    let index: Vec<HashMap<&Vec<usize>, usize>> = levels
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=big_n {
        faces.push(
            (0..=n)
                .map(|i| {
                    levels[n]
                        .iter()
                        .map(|s| {
                            let mut t = s.clone();
                            t.remove(i);
                            index[n - 1][&t]
                        })
                        .collect()
                })
                .collect(),
        );
    }
    let degens = (0..big_n)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    levels[n]
                        .iter()
                        .map(|s| {
                            let mut t = s.clone();
                            t.insert(j, s[j]);
                            index[n + 1][&t]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let names = levels
        .iter()
        .map(|l| l.iter().map(|s| name(s)).collect())
        .collect();
    FinSimplicialSet {
        names,
        faces,
        degens,
        basepoint: None,
    }
}

/// The standard simplex `Δ[n]`, truncated at level `big_n`. Simplices are
/// monotone sequences, named by their digits.
pub fn delta(n: usize, big_n: usize) -> Result<FinSimplicialSet> {
    if n > 9 {
        return Err(Error::Unsupported(format!("Δ[{n}]")));
    }
    if big_n < n {
        return Err(Error::Truncation {
            needed: n,
            available: big_n,
        });
    }
    Ok(from_sequences(
        (0..=big_n).map(|k| monotone(k, n)).collect(),
        seq_name,
    ))
}

/// The map `Δ[m] -> Δ[n]` induced by a monotone `theta : [m] -> [n]`.
pub fn delta_map(m: usize, n: usize, theta: &[usize], big_n: usize) -> Result<SimplicialSetMap> {
    if theta.len() != m + 1 || theta.windows(2).any(|w| w[0] > w[1]) || theta.iter().any(|&v| v > n)
    {
        return Err(Error::Invalid("theta is not a monotone map".into()));
    }
    let src = delta(m, big_n)?;
    let tgt = delta(n, big_n)?;
    let levels = (0..=big_n)
        .map(|k| {
            (0..src.size(k))
                .map(|x| {
                    let s: Vec<usize> = src
                        .name(k, x)
                        .bytes()
                        .map(|b| theta[(b - b'0') as usize])
                        .collect();
                    tgt.index_of(k, &seq_name(&s)).expect("monotone image")
                })
                .collect()
        })
        .collect();
    Ok(SimplicialSetMap { levels })
}

/// The coface `d^i : Δ[0] -> Δ[1]`; `d^0` picks vertex 1.
pub fn coface(i: usize, big_n: usize) -> Result<SimplicialSetMap> {
    delta_map(0, 1, &[1 - i.min(1)], big_n)
}

/// The collapse `Δ[1] -> Δ[0]`.
pub fn codegeneracy(big_n: usize) -> Result<SimplicialSetMap> {
    delta_map(1, 0, &[0, 0], big_n)
}

fn check_same_truncation(k: &FinSimplicialSet, l: &FinSimplicialSet) -> Result<()> {
    if k.truncation() != l.truncation() {
        return Err(Error::Invalid(format!(
            "incompatible truncations {} and {}",
            k.truncation(),
            l.truncation()
        )));
    }
    Ok(())
}

/// A product with its projections. Pairs `(x, y)` at level `n` have index
/// `x * |L_n| + y`.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: FinSimplicialSet,
    pub first: SimplicialSetMap,
    pub second: SimplicialSetMap,
}

pub fn product(k: &FinSimplicialSet, l: &FinSimplicialSet) -> Result<Product> {
    check_same_truncation(k, l)?;
    let big_n = k.truncation();
    let idx = |n: usize, x: usize, y: usize| x * l.size(n) + y;
    let names = (0..=big_n)
        .map(|n| {
            let mut v = Vec::new();
            for x in 0..k.size(n) {
                for y in 0..l.size(n) {
                    v.push(format!("({},{})", k.name(n, x), l.name(n, y)));
                }
            }
            v
        })
        .collect();
    let pairs = |n: usize| (0..k.size(n)).flat_map(move |x| (0..l.size(n)).map(move |y| (x, y)));
    let mut faces = vec![Vec::new()];
    for n in 1..=big_n {
        faces.push(
            (0..=n)
                .map(|i| {
                    pairs(n)
                        .map(|(x, y)| idx(n - 1, k.face(n, i, x), l.face(n, i, y)))
                        .collect()
                })
                .collect(),
        );
    }
    let degens = (0..big_n)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    pairs(n)
                        .map(|(x, y)| idx(n + 1, k.degen(n, j, x), l.degen(n, j, y)))
                        .collect()
                })
                .collect()
        })
        .collect();
    let basepoint = match (k.basepoint, l.basepoint) {
        (Some(a), Some(b)) => Some(idx(0, a, b)),
        _ => None,
    };
    let object = FinSimplicialSet {
        names,
        faces,
        degens,
        basepoint,
    };
    let first = SimplicialSetMap {
        levels: (0..=big_n)
            .map(|n| pairs(n).map(|(x, _)| x).collect())
            .collect(),
    };
    let second = SimplicialSetMap {
        levels: (0..=big_n)
            .map(|n| pairs(n).map(|(_, y)| y).collect())
            .collect(),
    };
    Ok(Product {
        object,
        first,
        second,
    })
}

/// The pairing `(f, g) : S -> K × L` into a product built by [`product`].
/// `l` is the second factor.
pub fn pair_into(
    l: &FinSimplicialSet,
    f: &SimplicialSetMap,
    g: &SimplicialSetMap,
) -> SimplicialSetMap {
    SimplicialSetMap {
        levels: f
            .levels
            .iter()
            .zip(&g.levels)
            .enumerate()
            .map(|(n, (a, b))| a.iter().zip(b).map(|(&x, &y)| x * l.size(n) + y).collect())
            .collect(),
    }
}

/// `f × g : K × L -> K' × L'`, where `tgt_second` is `L'`.
pub fn product_map(
    src: &Product,
    tgt_second: &FinSimplicialSet,
    f: &SimplicialSetMap,
    g: &SimplicialSetMap,
) -> SimplicialSetMap {
    pair_into(tgt_second, &f.compose(&src.first), &g.compose(&src.second))
}

/// A quotient with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub object: FinSimplicialSet,
    pub projection: SimplicialSetMap,
}

impl Quotient {
    /// The map out of the quotient induced by `g`, if `g` is constant on
    /// every class.
    pub fn descend(
        &self,
        source: &FinSimplicialSet,
        g: &SimplicialSetMap,
    ) -> Result<SimplicialSetMap> {
        let mut levels = Vec::new();
        for n in 0..=source.truncation() {
            let mut out: Vec<Option<usize>> = vec![None; self.object.size(n)];
            for x in 0..source.size(n) {
                let c = self.projection.apply(n, x);
                let v = g.apply(n, x);
                match out[c] {
                    Some(w) if w != v => {
                        return Err(Error::Invalid(format!(
                            "map is not constant on a class at level {n}"
                        )))
                    }
                    _ => out[c] = Some(v),
                }
            }
            levels.push(
                out.into_iter()
                    .map(|v| v.expect("projection is surjective"))
                    .collect(),
            );
        }
        Ok(SimplicialSetMap { levels })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.0[hi] = lo;
        }
    }
}

/// Quotient by the levelwise equivalence generated by `pairs[n]`. The
/// relation must be closed under faces and degeneracies; this is checked.
/// Each class is named after its smallest member unless `collapse_name`
/// gives a name for the class of a specific level-0 simplex.
pub fn identify(
    k: &FinSimplicialSet,
    pairs: &[Vec<(usize, usize)>],
    collapse_name: Option<(usize, &str)>,
) -> Result<Quotient> {
    let big_n = k.truncation();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut class_of: Vec<Vec<usize>> = Vec::new();
    for n in 0..=big_n {
        let mut uf = UnionFind((0..k.size(n)).collect());
        for &(a, b) in pairs.get(n).map(Vec::as_slice).unwrap_or(&[]) {
            uf.union(a, b);
        }
        let mut rep_index = HashMap::new();
        let mut rs = Vec::new();
        let mut cls = Vec::with_capacity(k.size(n));
        for x in 0..k.size(n) {
            let r = uf.find(x);
            let c = *rep_index.entry(r).or_insert_with(|| {
                rs.push(r);
                rs.len() - 1
            });
            cls.push(c);
        }
        reps.push(rs);
        class_of.push(cls);
    }
    let special = collapse_name.map(|(v, name)| {
        let mut x = v;
        let mut per_level = Vec::new();
        for n in 0..=big_n {
            per_level.push(class_of[n][x]);
            if n < big_n {
                x = k.degen(n, 0, x);
            }
        }
        (per_level, name.to_string())
    });
    let names = (0..=big_n)
        .map(|n| {
            reps[n]
                .iter()
                .enumerate()
                .map(|(c, &r)| match &special {
                    Some((lv, name)) if lv[n] == c => {
                        if n == 0 {
                            name.clone()
                        } else {
                            format!("{name}{n}")
                        }
                    }
                    _ => k.name(n, r).to_string(),
                })
                .collect()
        })
        .collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=big_n {
        faces.push(
            (0..=n)
                .map(|i| {
                    reps[n]
                        .iter()
                        .map(|&r| class_of[n - 1][k.face(n, i, r)])
                        .collect()
                })
                .collect(),
        );
    }
    let degens = (0..big_n)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    reps[n]
                        .iter()
                        .map(|&r| class_of[n + 1][k.degen(n, j, r)])
                        .collect()
                })
                .collect()
        })
        .collect();
    let basepoint = k.basepoint.map(|b| class_of[0][b]);
    let object = FinSimplicialSet::new(names, faces, degens, basepoint)?;
    let projection = SimplicialSetMap { levels: class_of };
    projection.verify(k, &object).map_err(|_| {
        Error::Invalid("relation is not closed under the simplicial operators".into())
    })?;
    Ok(Quotient { object, projection })
}

/// Collapses a levelwise-closed subobject (given by simplex indices per
/// level) to the basepoint.
pub fn quotient(k: &FinSimplicialSet, sub: &[Vec<usize>]) -> Result<Quotient> {
    let big_n = k.truncation();
    if sub.len() != big_n + 1 || sub[0].is_empty() {
        return Err(Error::Invalid(
            "subobject must list every level and contain a vertex".into(),
        ));
    }
    let members: Vec<std::collections::HashSet<usize>> =
        sub.iter().map(|l| l.iter().copied().collect()).collect();
    for n in 0..=big_n {
        for &x in &sub[n] {
            let closed_faces = n == 0 || (0..=n).all(|i| members[n - 1].contains(&k.face(n, i, x)));
            let closed_degens =
                n == big_n || (0..=n).all(|j| members[n + 1].contains(&k.degen(n, j, x)));
            if x >= k.size(n) || !closed_faces || !closed_degens {
                return Err(Error::Invalid(format!("not a subobject at level {n}")));
            }
        }
    }
    let pairs: Vec<Vec<(usize, usize)>> = sub
        .iter()
        .map(|l| l.iter().map(|&x| (l[0], x)).collect())
        .collect();
    let mut q = identify(k, &pairs, Some((sub[0][0], "*")))?;
    q.object.basepoint = Some(q.projection.apply(0, sub[0][0]));
    Ok(q)
}

/// A disjoint union with its two inclusions. Simplices of `K` come first.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: FinSimplicialSet,
    pub first: SimplicialSetMap,
    pub second: SimplicialSetMap,
}

pub fn coproduct(k: &FinSimplicialSet, l: &FinSimplicialSet) -> Result<Coproduct> {
    check_same_truncation(k, l)?;
    let big_n = k.truncation();
    let names = (0..=big_n)
        .map(|n| {
            k.names(n)
                .iter()
                .map(|s| format!("a{s}"))
                .chain(l.names(n).iter().map(|s| format!("b{s}")))
                .collect()
        })
        .collect();
    let shift = |n: usize, y: usize| y + k.size(n);
    let mut faces = vec![Vec::new()];
    for n in 1..=big_n {
        faces.push(
            (0..=n)
                .map(|i| {
                    (0..k.size(n))
                        .map(|x| k.face(n, i, x))
                        .chain((0..l.size(n)).map(|y| shift(n - 1, l.face(n, i, y))))
                        .collect()
                })
                .collect(),
        );
    }
    let degens = (0..big_n)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    (0..k.size(n))
                        .map(|x| k.degen(n, j, x))
                        .chain((0..l.size(n)).map(|y| shift(n + 1, l.degen(n, j, y))))
                        .collect()
                })
                .collect()
        })
        .collect();
    let object = FinSimplicialSet {
        names,
        faces,
        degens,
        basepoint: None,
    };
    let first = SimplicialSetMap {
        levels: (0..=big_n).map(|n| (0..k.size(n)).collect()).collect(),
    };
    let second = SimplicialSetMap {
        levels: (0..=big_n)
            .map(|n| (0..l.size(n)).map(|y| shift(n, y)).collect())
            .collect(),
    };
    Ok(Coproduct {
        object,
        first,
        second,
    })
}

/// A pushout of `B <- C -> D`, with the two legs into it.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: FinSimplicialSet,
    pub first: SimplicialSetMap,
    pub second: SimplicialSetMap,
    coproduct: Coproduct,
    quotient: Quotient,
}

impl Pushout {
    /// The map out of the pushout restricting to `f` and `g` on the legs.
    pub fn desc(&self, f: &SimplicialSetMap, g: &SimplicialSetMap) -> Result<SimplicialSetMap> {
        let levels = f
            .levels
            .iter()
            .zip(&g.levels)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        self.quotient
            .descend(&self.coproduct.object, &SimplicialSetMap { levels })
    }
}

pub fn pushout(
    c: &FinSimplicialSet,
    b: &FinSimplicialSet,
    d: &FinSimplicialSet,
    f: &SimplicialSetMap,
    g: &SimplicialSetMap,
) -> Result<Pushout> {
    f.verify(c, b)?;
    g.verify(c, d)?;
    let cp = coproduct(b, d)?;
    let pairs: Vec<Vec<(usize, usize)>> = (0..=c.truncation())
        .map(|n| {
            (0..c.size(n))
                .map(|x| {
                    (
                        cp.first.apply(n, f.apply(n, x)),
                        cp.second.apply(n, g.apply(n, x)),
                    )
                })
                .collect()
        })
        .collect();
    let quotient = identify(&cp.object, &pairs, None)?;
    let first = quotient.projection.compose(&cp.first);
    let second = quotient.projection.compose(&cp.second);
    Ok(Pushout {
        object: quotient.object.clone(),
        first,
        second,
        coproduct: cp,
        quotient,
    })
}

/// The circle `Δ[1] / ∂Δ[1]` and the projection `P` onto it.
pub fn circle(big_n: usize) -> Result<Quotient> {
    if big_n < 1 {
        return Err(Error::Truncation {
            needed: 1,
            available: big_n,
        });
    }
    let d1 = delta(1, big_n)?;
    let sub: Vec<Vec<usize>> = (0..=big_n)
        .map(|n| {
            (0..d1.size(n))
                .filter(|&x| {
                    d1.name(n, x)
                        .bytes()
                        .all(|b| b == d1.name(n, x).as_bytes()[0])
                })
                .collect()
        })
        .collect();
    quotient(&d1, &sub)
}

/// A wedge with its two inclusions and the two collapse maps onto the
/// summands.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub object: FinSimplicialSet,
    pub first: SimplicialSetMap,
    pub second: SimplicialSetMap,
    pub to_first: SimplicialSetMap,
    pub to_second: SimplicialSetMap,
}

pub fn wedge(k: &FinSimplicialSet, l: &FinSimplicialSet) -> Result<Wedge> {
    let (a, b) = match (k.basepoint, l.basepoint) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Invalid("wedge needs pointed simplicial sets".into())),
    };
    let pt = delta(0, k.truncation())?;
    let fa = SimplicialSetMap::constant(&pt, k, a);
    let fb = SimplicialSetMap::constant(&pt, l, b);
    let po = pushout(&pt, k, l, &fa, &fb)?;
    let mut object = po.object.clone();
    object.basepoint = Some(po.first.apply(0, a));
    let to_first = po.desc(
        &SimplicialSetMap::identity(k),
        &SimplicialSetMap::constant(l, k, a),
    )?;
    let to_second = po.desc(
        &SimplicialSetMap::constant(k, l, b),
        &SimplicialSetMap::identity(l),
    )?;
    Ok(Wedge {
        object,
        first: po.first.clone(),
        second: po.second.clone(),
        to_first,
        to_second,
    })
}

/// `K ∧ Δ[1] = K × Δ[1] / (* × Δ[1])`, with the product and projection.
#[derive(Clone, Debug)]
pub struct SmashInterval {
    pub object: FinSimplicialSet,
    pub product: Product,
    pub projection: Quotient,
}

pub fn smash_interval(k: &FinSimplicialSet) -> Result<SmashInterval> {
    if !k.is_pointed() {
        return Err(Error::Invalid(
            "smash needs a pointed simplicial set".into(),
        ));
    }
    let d1 = delta(1, k.truncation())?;
    let p = product(k, &d1)?;
    let sub: Vec<Vec<usize>> = (0..=k.truncation())
        .map(|n| {
            let bn = k.basepoint_at(n).expect("pointed");
            (0..d1.size(n)).map(|t| bn * d1.size(n) + t).collect()
        })
        .collect();
    let q = quotient(&p.object, &sub)?;
    Ok(SmashInterval {
        object: q.object.clone(),
        product: p,
        projection: q,
    })
}

/// `Ω`: two intervals `p`, `q` glued end to end in a loop, pointed at the
/// start of `q`; `α` collapses `q`; `π` sends `q` and `p` to the two circles
/// of `S¹ ∨ S¹`.
#[derive(Clone, Debug)]
pub struct OmegaGadget {
    pub omega: FinSimplicialSet,
    pub p: SimplicialSetMap,
    pub q: SimplicialSetMap,
    pub circle: Quotient,
    pub wedge: Wedge,
    pub alpha: SimplicialSetMap,
    pub pi: SimplicialSetMap,
}

pub fn omega_gadget(big_n: usize) -> Result<OmegaGadget> {
    if big_n < 2 {
        return Err(Error::Truncation {
            needed: 2,
            available: big_n,
        });
    }
    let d0 = delta(0, big_n)?;
    let d1 = delta(1, big_n)?;
    let two = coproduct(&d0, &d0)?;
    let (c0, c1) = (coface(0, big_n)?, coface(1, big_n)?);
    let join = |a: &SimplicialSetMap, b: &SimplicialSetMap| SimplicialSetMap {
        levels: a
            .levels
            .iter()
            .zip(&b.levels)
            .map(|(x, y)| x.iter().chain(y).copied().collect())
            .collect(),
    };
    let to_p = join(&c0, &c1);
    let to_q = join(&c1, &c0);
    let po = pushout(&two.object, &d1, &d1, &to_p, &to_q)?;
    let mut omega = po.object.clone();
    omega.basepoint = Some(po.second.apply(0, c1.apply(0, 0)));
    let s1 = circle(big_n)?;
    let w = wedge(&s1.object, &s1.object)?;
    let pp = &s1.projection;
    let star = SimplicialSetMap::constant(&d1, &s1.object, s1.object.basepoint().unwrap());
    let alpha = po.desc(pp, &star)?;
    let pi = po.desc(&w.second.compose(pp), &w.first.compose(pp))?;
    alpha.verify(&omega, &s1.object)?;
    pi.verify(&omega, &w.object)?;
    Ok(OmegaGadget {
        omega,
        p: po.first.clone(),
        q: po.second.clone(),
        circle: s1,
        wedge: w,
        alpha,
        pi,
    })
}

/// `Ω̄`: the end of `p̄` glued to the far end of `q̄`, pointed at vertex 0 of
/// `q̄`. `ᾱ` is the identity on `p̄` and constant on `q̄`; `π̄` sends `p̄` to
/// the interval and `q̄` around the circle of `S¹ ∨ Δ[1]`.
#[derive(Clone, Debug)]
pub struct OmegaBarGadget {
    pub omega_bar: FinSimplicialSet,
    pub p: SimplicialSetMap,
    pub q: SimplicialSetMap,
    /// `Δ[1]` pointed at vertex 0.
    pub interval: FinSimplicialSet,
    pub circle: Quotient,
    pub wedge: Wedge,
    pub alpha: SimplicialSetMap,
    pub pi: SimplicialSetMap,
}

pub fn omega_bar_gadget(big_n: usize) -> Result<OmegaBarGadget> {
    if big_n < 2 {
        return Err(Error::Truncation {
            needed: 2,
            available: big_n,
        });
    }
    let d0 = delta(0, big_n)?;
    let d1 = delta(1, big_n)?;
    let (c0, c1) = (coface(0, big_n)?, coface(1, big_n)?);
    let po = pushout(&d0, &d1, &d1, &c1, &c0)?;
    let mut omega_bar = po.object.clone();
    omega_bar.basepoint = Some(po.second.apply(0, c1.apply(0, 0)));
    let interval = d1.pointed_at(0)?;
    let s1 = circle(big_n)?;
    let w = wedge(&s1.object, &interval)?;
    let collapse_to_zero = c1.compose(&codegeneracy(big_n)?);
    let alpha = po.desc(&SimplicialSetMap::identity(&d1), &collapse_to_zero)?;
    let pi = po.desc(&w.second, &w.first.compose(&s1.projection))?;
    alpha.verify(&omega_bar, &interval)?;
    pi.verify(&omega_bar, &w.object)?;
    Ok(OmegaBarGadget {
        omega_bar,
        p: po.first.clone(),
        q: po.second.clone(),
        interval,
        circle: s1,
        wedge: w,
        alpha,
        pi,
    })
}

/// The pointwise join and meet `Δ[1] × Δ[1] -> Δ[1]` and the homotopy
/// `Ω ∧ Δ[1] -> S¹` between `α` and the first wedge projection of `π`.
#[derive(Clone, Debug)]
pub struct IntervalRetractions {
    pub square: Product,
    /// Pointwise maximum; `join ∘ (d^1 × Id) = Id`.
    pub join: SimplicialSetMap,
    /// Pointwise minimum; `meet ∘ (d^0 × Id) = Id`.
    pub meet: SimplicialSetMap,
    pub omega: OmegaGadget,
    pub cylinder: Product,
    /// On `Ω × Δ[1]`: the circle map of `meet` on `q`, of `join` on `p`.
    pub homotopy: SimplicialSetMap,
    pub smash: SmashInterval,
    /// `homotopy` descended to `Ω ∧ Δ[1]`.
    pub reduced: SimplicialSetMap,
}

pub fn interval_retractions(big_n: usize) -> Result<IntervalRetractions> {
    let d1 = delta(1, big_n)?;
    let square = product(&d1, &d1)?;
    let pointwise = |op: fn(u8, u8) -> u8| -> SimplicialSetMap {
        SimplicialSetMap {
            levels: (0..=big_n)
                .map(|n| {
                    let m = d1.size(n);
                    (0..m * m)
                        .map(|xy| {
                            let (s, t) =
                                (d1.name(n, xy / m).as_bytes(), d1.name(n, xy % m).as_bytes());
                            let r: String =
                                s.iter().zip(t).map(|(&a, &b)| op(a, b) as char).collect();
                            d1.index_of(n, &r).expect("monotone")
                        })
                        .collect()
                })
                .collect(),
        }
    };
    let join = pointwise(|a, b| a.max(b));
    let meet = pointwise(|a, b| a.min(b));
    join.verify(&square.object, &d1)?;
    meet.verify(&square.object, &d1)?;

    let omega = omega_gadget(big_n)?;
    let cylinder = product(&omega.omega, &d1)?;
    let s1 = &omega.circle;
    // Any preimage of an Ω-simplex in one of the two legs.
    let mut homotopy = Vec::new();
    for n in 0..=big_n {
        let m = d1.size(n);
        let mut via: Vec<Option<(bool, usize)>> = vec![None; omega.omega.size(n)];
        for x in 0..m {
            via[omega.q.apply(n, x)].get_or_insert((true, x));
            via[omega.p.apply(n, x)].get_or_insert((false, x));
        }
        let mut level = Vec::with_capacity(omega.omega.size(n) * m);
        for w in 0..omega.omega.size(n) {
            let (on_q, x) = via[w].expect("legs are jointly surjective");
            for t in 0..m {
                let r = if on_q {
                    meet.apply(n, x * m + t)
                } else {
                    join.apply(n, x * m + t)
                };
                level.push(s1.projection.apply(n, r));
            }
        }
        homotopy.push(level);
    }
    let homotopy = SimplicialSetMap { levels: homotopy };
    homotopy.verify(&cylinder.object, &s1.object)?;
    let smash = smash_interval(&omega.omega)?;
    let reduced = smash.projection.descend(&cylinder.object, &homotopy)?;
    reduced.verify(&smash.object, &s1.object)?;
    Ok(IntervalRetractions {
        square,
        join,
        meet,
        omega,
        cylinder,
        homotopy,
        smash,
        reduced,
    })
}

#[derive(Serialize, Deserialize)]
struct SsetJson {
    levels: Vec<Vec<String>>,
    #[serde(default)]
    faces: Vec<Vec<BTreeMap<String, String>>>,
    #[serde(default)]
    degeneracies: Vec<Vec<BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basepoint: Option<String>,
}

impl Serialize for FinSimplicialSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let big_n = self.truncation();
        let named = |from: usize, to: usize, v: &Vec<usize>| -> BTreeMap<String, String> {
            v.iter()
                .enumerate()
                .map(|(x, &y)| (self.names[from][x].clone(), self.names[to][y].clone()))
                .collect()
        };
        SsetJson {
            levels: self.names.clone(),
            faces: (1..=big_n)
                .map(|n| self.faces[n].iter().map(|f| named(n, n - 1, f)).collect())
                .collect(),
            degeneracies: (0..big_n)
                .map(|n| self.degens[n].iter().map(|f| named(n, n + 1, f)).collect())
                .collect(),
            basepoint: self.basepoint.map(|b| self.names[0][b].clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinSimplicialSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SsetJson::deserialize(de)?;
        if raw.levels.is_empty() {
            return Err(D::Error::custom("no levels"));
        }
        let big_n = raw.levels.len() - 1;
        let lookup = |n: usize, name: &str| -> std::result::Result<usize, D::Error> {
            raw.levels[n]
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| D::Error::custom(format!("unknown simplex `{name}` at level {n}")))
        };
        let resolve = |from: usize,
                       to: usize,
                       m: &BTreeMap<String, String>|
         -> std::result::Result<Vec<usize>, D::Error> {
            raw.levels[from]
                .iter()
                .map(|x| {
                    m.get(x)
                        .ok_or_else(|| D::Error::custom(format!("`{x}` has no image")))
                        .and_then(|y| lookup(to, y))
                })
                .collect()
        };
        if raw.faces.len() != big_n || raw.degeneracies.len() != big_n {
            return Err(D::Error::custom(
                "faces and degeneracies must be given for every level",
            ));
        }
        let mut faces = vec![Vec::new()];
        for n in 1..=big_n {
            faces.push(
                raw.faces[n - 1]
                    .iter()
                    .map(|m| resolve(n, n - 1, m))
                    .collect::<std::result::Result<_, _>>()?,
            );
        }
        let degens = (0..big_n)
            .map(|n| {
                raw.degeneracies[n]
                    .iter()
                    .map(|m| resolve(n, n + 1, m))
                    .collect::<std::result::Result<_, _>>()
            })
            .collect::<std::result::Result<_, _>>()?;
        let basepoint = raw.basepoint.as_deref().map(|b| lookup(0, b)).transpose()?;
        FinSimplicialSet::new(raw.levels.clone(), faces, degens, basepoint)
            .map_err(D::Error::custom)
    }
}

/// Errors unless `k` is known up to level `need`.
pub fn require_truncation(k: &FinSimplicialSet, need: usize) -> Result<()> {
    k.require_level(need)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(k: &FinSimplicialSet) -> Vec<usize> {
        (0..=k.truncation()).map(|n| k.size(n)).collect()
    }

    #[test]
    fn simplices() {
        assert_eq!(sizes(&delta(0, 3).unwrap()), vec![1, 1, 1, 1]);
        assert_eq!(sizes(&delta(1, 2).unwrap()), vec![2, 3, 4]);
        assert_eq!(sizes(&delta(2, 3).unwrap()), vec![3, 6, 10, 15]);
        assert!(delta(1, 0).is_err());
        assert_eq!(delta(2, 3).unwrap().nondegenerate(2).len(), 1);
        let c0 = coface(0, 2).unwrap();
        let d1 = delta(1, 2).unwrap();
        assert_eq!(d1.name(0, c0.apply(0, 0)), "1");
    }

    #[test]
    fn circles_and_wedges() {
        let s1 = circle(4).unwrap();
        assert_eq!(sizes(&s1.object), vec![1, 2, 3, 4, 5]);
        assert_eq!(s1.object.nondegenerate(1).len(), 1);
        assert!(s1.projection.levels.iter().enumerate().all(|(n, l)| {
            let mut hit = vec![false; s1.object.size(n)];
            l.iter().for_each(|&y| hit[y] = true);
            hit.into_iter().all(|h| h)
        }));
        let w = wedge(&s1.object, &s1.object).unwrap();
        assert_eq!(w.object.size(1), 3);
        assert_eq!(w.object.nondegenerate(1).len(), 2);
        w.to_first.verify(&w.object, &s1.object).unwrap();
        assert_eq!(
            w.to_first.compose(&w.first),
            SimplicialSetMap::identity(&s1.object)
        );
    }

    #[test]
    fn product_unit() {
        let k = circle(3).unwrap().object;
        let p = product(&delta(0, 3).unwrap(), &k).unwrap();
        assert_eq!(sizes(&p.object), sizes(&k));
        p.second.verify(&p.object, &k).unwrap();
        assert!(product(&k, &delta(0, 2).unwrap()).is_err());
    }

    #[test]
    fn quotient_rejects_non_subobjects() {
        let d1 = delta(1, 2).unwrap();
        // the edge "01" without its vertices
        let bad = vec![vec![], vec![1], vec![]];
        assert!(quotient(&d1, &bad).is_err());
    }

    #[test]
    fn omega_shapes_and_equations() {
        let g = omega_gadget(3).unwrap();
        assert_eq!(g.omega.size(0), 2);
        let star = g.circle.object.basepoint_at(1).unwrap();
        // α q is constant, α p = P
        assert!(g.alpha.compose(&g.q).levels[1].iter().all(|&y| y == star));
        assert_eq!(g.alpha.compose(&g.p), g.circle.projection);
        // π q = i1 P and π p = i2 P
        assert_eq!(
            g.pi.compose(&g.q),
            g.wedge.first.compose(&g.circle.projection)
        );
        assert_eq!(
            g.pi.compose(&g.p),
            g.wedge.second.compose(&g.circle.projection)
        );
        assert_eq!(g.wedge.to_second.compose(&g.pi), g.alpha);
    }

    #[test]
    fn omega_bar_shapes_and_equations() {
        let g = omega_bar_gadget(3).unwrap();
        assert_eq!(g.omega_bar.size(0), 3);
        let d1 = delta(1, 3).unwrap();
        assert_eq!(g.alpha.compose(&g.p), SimplicialSetMap::identity(&d1));
        assert_eq!(
            g.pi.compose(&g.q),
            g.wedge.first.compose(&g.circle.projection)
        );
        assert_eq!(g.pi.compose(&g.p), g.wedge.second);
        let zero = coface(1, 3).unwrap().compose(&codegeneracy(3).unwrap());
        assert_eq!(g.alpha.compose(&g.q), zero);
    }

    #[test]
    fn retraction_boundary_equations() {
        let n = 3;
        let r = interval_retractions(n).unwrap();
        let d1 = delta(1, n).unwrap();
        let id = SimplicialSetMap::identity(&d1);
        let pt_to = |i: usize| coface(i, n).unwrap().compose(&codegeneracy(n).unwrap());
        let sq = |a: &SimplicialSetMap, b: &SimplicialSetMap| pair_into(&d1, a, b);
        assert_eq!(r.meet.compose(&sq(&pt_to(0), &id)), id);
        assert_eq!(r.meet.compose(&sq(&id, &pt_to(0))), id);
        assert_eq!(r.join.compose(&sq(&pt_to(1), &id)), id);
        assert_eq!(r.join.compose(&sq(&id, &pt_to(1))), id);
        assert_eq!(r.join.compose(&sq(&pt_to(0), &id)), pt_to(0));
        assert_eq!(r.meet.compose(&sq(&pt_to(1), &id)), pt_to(1));
        assert_eq!(r.join.compose(&sq(&id, &id)), r.meet.compose(&sq(&id, &id)));
    }

    #[test]
    fn homotopy_ends() {
        let n = 3;
        let r = interval_retractions(n).unwrap();
        let g = &r.omega;
        let d1 = delta(1, n).unwrap();
        let end = |i: usize| {
            let t = coface(i, n).unwrap().compose(&SimplicialSetMap::constant(
                &g.omega,
                &delta(0, n).unwrap(),
                0,
            ));
            pair_into(&d1, &SimplicialSetMap::identity(&g.omega), &t)
        };
        assert_eq!(r.homotopy.compose(&end(0)), g.wedge.to_first.compose(&g.pi));
        assert_eq!(r.homotopy.compose(&end(1)), g.alpha);
    }

    #[test]
    fn json_roundtrip() {
        let s1 = circle(2).unwrap().object;
        let text = serde_json::to_string(&s1).unwrap();
        let back: FinSimplicialSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s1);
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["faces"][0][0] = serde_json::json!({"*1": "*", "01": "*"});
        v["faces"][1][0] = serde_json::json!({});
        assert!(serde_json::from_value::<FinSimplicialSet>(v).is_err());
    }
}
