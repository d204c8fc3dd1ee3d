use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use super::bimodule::{apply, Bimodule, BimoduleMorphism};
use super::category::{FinCategory, Functor};
use super::{reduce_by, CatError, MODULUS};

/// Default bound on the number of sequences in one degree.
pub const SEQUENCE_LIMIT: usize = 200_000;

/// Which group sits over a sequence `X_0 ← … ← X_n`: `L(X_n, X_0)` for
/// cochains, `L(X_0, X_n)` for chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Cochain,
    Chain,
}

/// All composable sequences `(σ_1, …, σ_n)`, `σ_i : X_i → X_{i-1}`, in
/// lexicographic order of morphism indices. Degree 0 lists the identities.
pub fn composable_sequences(
    cat: &FinCategory,
    n: usize,
    normalized: bool,
    limit: usize,
) -> Result<Vec<Vec<u32>>, CatError> {
    if n == 0 {
        return Ok((0..cat.object_count()).map(|x| vec![cat.identity(x) as u32]).collect());
    }
    let allowed = |m: usize| !normalized || !cat.is_degenerate(m);
    // morphisms into each object, in index order
    let mut into = vec![Vec::new(); cat.object_count()];
    for m in 0..cat.morphism_count() {
        if allowed(m) {
            into[cat.target(m)].push(m as u32);
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(n);
    fn walk(
        cat: &FinCategory,
        into: &[Vec<u32>],
        n: usize,
        stack: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        limit: usize,
    ) -> Result<(), CatError> {
        if stack.len() == n {
            if out.len() >= limit {
                return Err(CatError::SizeLimit {
                    what: format!("composable {n}-sequences"),
                    count: out.len() + 1,
                    limit,
                });
            }
            out.push(stack.clone());
            return Ok(());
        }
        let x = cat.source(*stack.last().unwrap() as usize);
        for &m in &into[x] {
            stack.push(m);
            walk(cat, into, n, stack, out, limit)?;
            stack.pop();
        }
        Ok(())
    }
    for m in 0..cat.morphism_count() {
        if !allowed(m) {
            continue;
        }
        stack.push(m as u32);
        walk(cat, &into, n, &mut stack, &mut out, limit)?;
        stack.pop();
    }
    Ok(out)
}

/// `(X_0, X_n)` of a sequence.
pub(crate) fn endpoints(cat: &FinCategory, seq: &[u32]) -> (usize, usize) {
    (cat.target(seq[0] as usize), cat.source(*seq.last().unwrap() as usize))
}

fn group_of<'a>(cat: &FinCategory, l: &'a Bimodule, seq: &[u32], variance: Variance) -> &'a [u32] {
    let (x0, xn) = endpoints(cat, seq);
    match variance {
        Variance::Cochain => l.group(xn, x0),
        Variance::Chain => l.group(x0, xn),
    }
}

/// The coordinates of `F^n` or `F_n`: one block per sequence.
#[derive(Clone, Debug)]
pub struct SeqSpace {
    degree: usize,
    variance: Variance,
    normalized: bool,
    seqs: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    offsets: Vec<usize>,
    orders: Vec<u32>,
}

impl SeqSpace {
    pub fn new(
        cat: &FinCategory,
        l: &Bimodule,
        degree: usize,
        variance: Variance,
        normalized: bool,
    ) -> Result<Self, CatError> {
        Self::with_limit(cat, l, degree, variance, normalized, SEQUENCE_LIMIT)
    }

    pub fn with_limit(
        cat: &FinCategory,
        l: &Bimodule,
        degree: usize,
        variance: Variance,
        normalized: bool,
        limit: usize,
    ) -> Result<Self, CatError> {
        let seqs = composable_sequences(cat, degree, normalized, limit)?;
        let mut index = HashMap::with_capacity(seqs.len());
        let mut offsets = Vec::with_capacity(seqs.len() + 1);
        let mut orders = Vec::new();
        for (i, s) in seqs.iter().enumerate() {
            index.insert(s.clone(), i);
            offsets.push(orders.len());
            orders.extend_from_slice(group_of(cat, l, s, variance));
        }
        offsets.push(orders.len());
        Ok(SeqSpace {
            degree,
            variance,
            normalized,
            seqs,
            index,
            offsets,
            orders,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn sequences(&self) -> &[Vec<u32>] {
        &self.seqs
    }

    pub fn position(&self, seq: &[u32]) -> Option<usize> {
        self.index.get(seq).copied()
    }

    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Orders of all coordinates.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// Generators `o_i e_i` of the relations of `⊕ Z/o_i` inside `(Z/4)^dim`.
    pub fn relations(&self) -> Vec<Vec<u32>> {
        crate::linalg::relation_generators(MODULUS, &self.orders)
    }

    pub fn flatten_cochain(&self, c: &Cochain) -> Vec<u32> {
        assert_eq!((self.variance, self.degree), (Variance::Cochain, c.degree));
        self.flatten(&c.values)
    }

    pub fn flatten_chain(&self, z: &Chain) -> Vec<u32> {
        assert_eq!((self.variance, self.degree), (Variance::Chain, z.degree));
        self.flatten(&z.values)
    }

    pub(crate) fn flatten(&self, values: &BTreeMap<Vec<u32>, Vec<u32>>) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for (seq, val) in values {
            let i = self.position(seq).expect("sequence belongs to the space");
            v[self.block(i)].copy_from_slice(val);
        }
        v
    }

    pub(crate) fn unflatten(&self, v: &[u32]) -> BTreeMap<Vec<u32>, Vec<u32>> {
        let mut out = BTreeMap::new();
        for (i, s) in self.seqs.iter().enumerate() {
            let mut val = v[self.block(i)].to_vec();
            reduce_by(&mut val, &self.orders[self.block(i)]);
            if val.iter().any(|&x| x != 0) {
                out.insert(s.clone(), val);
            }
        }
        out
    }

    pub fn cochain(&self, v: &[u32]) -> Cochain {
        assert_eq!(self.variance, Variance::Cochain);
        Cochain {
            degree: self.degree,
            values: self.unflatten(v),
        }
    }

    pub fn chain(&self, v: &[u32]) -> Chain {
        assert_eq!(self.variance, Variance::Chain);
        Chain {
            degree: self.degree,
            values: self.unflatten(v),
        }
    }
}

/// An `n`-cochain, stored sparsely: absent sequences carry the value 0.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cochain {
    degree: usize,
    values: BTreeMap<Vec<u32>, Vec<u32>>,
}

/// An `n`-chain `Σ c·(σ_1, …, σ_n)`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain {
    degree: usize,
    values: BTreeMap<Vec<u32>, Vec<u32>>,
}

macro_rules! sparse_common {
    ($t:ty, $variance:expr) => {
        impl $t {
            pub fn zero(degree: usize) -> Self {
                Self {
                    degree,
                    values: BTreeMap::new(),
                }
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            /// Sets the value at a sequence, reducing by the group orders.
            pub fn set(&mut self, cat: &FinCategory, l: &Bimodule, seq: Vec<u32>, mut value: Vec<u32>) {
                let orders = group_of(cat, l, &seq, $variance);
                assert_eq!(value.len(), orders.len(), "value lies in the wrong group");
                reduce_by(&mut value, orders);
                if value.iter().all(|&x| x == 0) {
                    self.values.remove(&seq);
                } else {
                    self.values.insert(seq, value);
                }
            }

            pub fn get(&self, seq: &[u32]) -> Option<&[u32]> {
                self.values.get(seq).map(|v| v.as_slice())
            }

            /// The value at `seq`, zero if absent.
            pub fn value(&self, cat: &FinCategory, l: &Bimodule, seq: &[u32]) -> Vec<u32> {
                match self.values.get(seq) {
                    Some(v) => v.clone(),
                    None => vec![0; group_of(cat, l, seq, $variance).len()],
                }
            }

            pub fn is_zero(&self) -> bool {
                self.values.is_empty()
            }

            pub fn support(&self) -> impl Iterator<Item = (&Vec<u32>, &Vec<u32>)> {
                self.values.iter()
            }

            pub fn add(&self, other: &Self, cat: &FinCategory, l: &Bimodule) -> Self {
                assert_eq!(self.degree, other.degree);
                let mut out = self.clone();
                for (s, v) in &other.values {
                    let mut w = out.value(cat, l, s);
                    for (a, b) in w.iter_mut().zip(v) {
                        *a += b;
                    }
                    out.set(cat, l, s.clone(), w);
                }
                out
            }
        }
    };
}

sparse_common!(Cochain, Variance::Cochain);
sparse_common!(Chain, Variance::Chain);

enum Action {
    None,
    Left(usize, usize),
    Right(usize, usize),
}

struct Face {
    seq: Vec<u32>,
    sign: bool,
    action: Action,
}

/// The faces of `(σ_1, …, σ_m)` with their signs, where the outer faces
/// carry the given actions.
fn faces(cat: &FinCategory, s: &[u32], first: Action, last: Action) -> Vec<Face> {
    let m = s.len();
    let mut out = Vec::with_capacity(m + 1);
    let head = if m == 1 {
        vec![cat.identity(cat.source(s[0] as usize)) as u32]
    } else {
        s[1..].to_vec()
    };
    out.push(Face {
        seq: head,
        sign: false,
        action: first,
    });
    for i in 1..m {
        let mut t = Vec::with_capacity(m - 1);
        t.extend_from_slice(&s[..i - 1]);
        t.push(cat.compose(s[i - 1] as usize, s[i] as usize).expect("composable sequence") as u32);
        t.extend_from_slice(&s[i + 1..]);
        out.push(Face {
            seq: t,
            sign: i % 2 == 1,
            action: Action::None,
        });
    }
    let tail = if m == 1 {
        vec![cat.identity(cat.target(s[0] as usize)) as u32]
    } else {
        s[..m - 1].to_vec()
    };
    out.push(Face {
        seq: tail,
        sign: m % 2 == 1,
        action: last,
    });
    out
}

/// Coboundary faces of an `(n+1)`-sequence `s`: the value `d(c)(s)` is
/// `Σ ± action(c(face))`.
fn coboundary_faces(cat: &FinCategory, s: &[u32]) -> Vec<Face> {
    let (x0, xm) = endpoints(cat, s);
    let first = Action::Left(s[0] as usize, xm);
    let last = Action::Right(*s.last().unwrap() as usize, x0);
    faces(cat, s, first, last)
}

/// Boundary faces of an `n`-sequence `s`: `d(c·s) = Σ ± action(c)·face`.
fn boundary_faces(cat: &FinCategory, s: &[u32]) -> Vec<Face> {
    let (x0, xn) = endpoints(cat, s);
    let first = Action::Right(s[0] as usize, xn);
    let last = Action::Left(*s.last().unwrap() as usize, x0);
    faces(cat, s, first, last)
}

fn act(l: &Bimodule, action: &Action, x: &[u32]) -> Vec<u32> {
    match *action {
        Action::None => x.to_vec(),
        Action::Left(m, w) => l.left(m, w).mul_vec(x),
        Action::Right(m, w) => l.right(m, w).mul_vec(x),
    }
}

fn signed_add(acc: &mut [u32], v: &[u32], negative: bool) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = if negative { (*a + MODULUS - b % MODULUS) % MODULUS } else { (*a + b) % MODULUS };
    }
}

/// The Baues–Wirsching coboundary, evaluated on every `(n+1)`-sequence.
pub fn bw_differential(cat: &FinCategory, l: &Bimodule, c: &Cochain) -> Result<Cochain, CatError> {
    let seqs = composable_sequences(cat, c.degree + 1, false, SEQUENCE_LIMIT)?;
    let mut out = Cochain::zero(c.degree + 1);
    for s in seqs {
        let (x0, xm) = endpoints(cat, &s);
        let mut acc = vec![0u32; l.group(xm, x0).len()];
        for f in coboundary_faces(cat, &s) {
            if let Some(v) = c.get(&f.seq) {
                signed_add(&mut acc, &act(l, &f.action, v), f.sign);
            }
        }
        out.set(cat, l, s, acc);
    }
    Ok(out)
}

/// The Pirashvili–Waldhausen boundary of an `n`-chain, `n ≥ 1`.
pub fn pw_differential(cat: &FinCategory, l: &Bimodule, z: &Chain) -> Result<Chain, CatError> {
    if z.degree == 0 {
        return Err(CatError::Degree(0));
    }
    let mut out = Chain::zero(z.degree - 1);
    for (s, c) in &z.values {
        for f in boundary_faces(cat, s) {
            let mut w = out.value(cat, l, &f.seq);
            signed_add(&mut w, &act(l, &f.action, c), f.sign);
            out.set(cat, l, f.seq, w);
        }
    }
    Ok(out)
}

/// `(F^*c)(σ_1, …, σ_n) = c(Fσ_1, …, Fσ_n)` on every sequence of `source`.
pub fn pullback_cochain(
    source: &FinCategory,
    l: &Bimodule,
    f: &Functor,
    c: &Cochain,
) -> Result<Cochain, CatError> {
    let pulled = l.pullback(source, f);
    let mut out = Cochain::zero(c.degree);
    for s in composable_sequences(source, c.degree, false, SEQUENCE_LIMIT)? {
        let image: Vec<u32> = s.iter().map(|&m| f.morphism(m as usize) as u32).collect();
        if let Some(v) = c.get(&image) {
            out.set(source, &pulled, s, v.to_vec());
        }
    }
    Ok(out)
}

/// Valuewise `t(X_n, X_0)`.
pub fn pushforward_cochain(
    cat: &FinCategory,
    target: &Bimodule,
    t: &BimoduleMorphism,
    c: &Cochain,
) -> Cochain {
    let mut out = Cochain::zero(c.degree);
    for (s, v) in &c.values {
        let (x0, xn) = endpoints(cat, s);
        out.set(cat, target, s.clone(), apply(t.map(xn, x0), v, target.group(xn, x0)));
    }
    out
}

pub fn random_cochain<R: Rng + ?Sized>(rng: &mut R, space: &SeqSpace) -> Cochain {
    let v: Vec<u32> = space.orders().iter().map(|&o| rng.gen_range(0..o)).collect();
    space.cochain(&v)
}

pub fn random_chain<R: Rng + ?Sized>(rng: &mut R, space: &SeqSpace) -> Chain {
    let v: Vec<u32> = space.orders().iter().map(|&o| rng.gen_range(0..o)).collect();
    space.chain(&v)
}

/// A sparse `Z/4` matrix stored by rows.
#[derive(Clone, Debug)]
pub(crate) struct SparseMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<(usize, u32)>>,
}

impl SparseMatrix {
    fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    fn add(&mut self, r: usize, c: usize, v: u32) {
        if v % MODULUS != 0 {
            self.rows[r].push((c, v % MODULUS));
        }
    }

    /// Merges duplicate entries and reduces row `i` modulo `orders[i]`.
    fn finish(&mut self, orders: &[u32]) {
        for (row, &o) in self.rows.iter_mut().zip(orders) {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, u32)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = (*lv + v) % MODULUS,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| e.1 % o != 0);
            for e in merged.iter_mut() {
                e.1 %= o;
            }
            *row = merged;
        }
    }

    pub fn dense_row(&self, r: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.cols];
        for &(c, x) in &self.rows[r] {
            v[c] = x;
        }
        v
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        let mut cols = vec![vec![0u32; self.rows.len()]; self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, x) in row {
                cols[c][r] = x;
            }
        }
        cols
    }

    pub fn to_dense(&self) -> crate::linalg::ZModMatrix {
        let mut m = crate::linalg::ZModMatrix::zeros(MODULUS, self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, x) in row {
                m.set(r, c, x);
            }
        }
        m
    }

    #[cfg(test)]
    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| v * x[c]).sum::<u32>() % MODULUS)
            .collect()
    }
}

fn place(
    m: &mut SparseMatrix,
    l: &Bimodule,
    action: &Action,
    sign: bool,
    row0: usize,
    col0: usize,
    width: usize,
    height: usize,
) {
    let neg = |v: u32| if sign { (MODULUS - v % MODULUS) % MODULUS } else { v % MODULUS };
    match *action {
        Action::None => {
            for k in 0..width {
                m.add(row0 + k, col0 + k, neg(1));
            }
        }
        Action::Left(s, w) | Action::Right(s, w) => {
            let a = match *action {
                Action::Left(..) => l.left(s, w),
                _ => l.right(s, w),
            };
            debug_assert_eq!(a.shape(), (height, width));
            for i in 0..height {
                for j in 0..width {
                    m.add(row0 + i, col0 + j, neg(a.get(i, j)));
                }
            }
        }
    }
}

/// The matrix of `d : F^n → F^{n+1}` between two cochain spaces built
/// alike (both full or both normalized).
pub(crate) fn coboundary_matrix(cat: &FinCategory, l: &Bimodule, src: &SeqSpace, dst: &SeqSpace) -> SparseMatrix {
    let mut m = SparseMatrix::new(dst.dim(), src.dim());
    for (ti, s) in dst.sequences().iter().enumerate() {
        let rows = dst.block(ti);
        for f in coboundary_faces(cat, s) {
            // degenerate faces are absent from normalized spaces
            let Some(fi) = src.position(&f.seq) else { continue };
            let cols = src.block(fi);
            place(&mut m, l, &f.action, f.sign, rows.start, cols.start, cols.len(), rows.len());
        }
    }
    m.finish(dst.orders());
    m
}

/// The matrix of `d : F_n → F_{n-1}`.
pub(crate) fn boundary_matrix(cat: &FinCategory, l: &Bimodule, src: &SeqSpace, dst: &SeqSpace) -> SparseMatrix {
    let mut m = SparseMatrix::new(dst.dim(), src.dim());
    for (si, s) in src.sequences().iter().enumerate() {
        let cols = src.block(si);
        for f in boundary_faces(cat, s) {
            let Some(fi) = dst.position(&f.seq) else { continue };
            let rows = dst.block(fi);
            place(&mut m, l, &f.action, f.sign, rows.start, cols.start, cols.len(), rows.len());
        }
    }
    m.finish(dst.orders());
    m
}
