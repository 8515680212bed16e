//! Seeded instances for every case.
//!
//! Small integer components are drawn by rejection against the case's word
//! conditions (checked in `i64`), glued by direct sum, and mixed by a random
//! integer similarity that keeps every entry within `[-3, 3]`. Every word
//! condition is similarity invariant, so the mixed instance still satisfies
//! the case; it is re-checked in exact arithmetic before being returned.
//!
//! Randomness comes from SplitMix64 seeded with
//! `seed ^ fnv1a64(case id)`, so streams are reproducible in any language.
//! Seed 0 of C3.4 (with `n = 3, m = 1`) and of T4.1 (with `n = 4, m = 2`)
//! returns the two worked examples unchanged.

use serde::{Deserialize, Serialize};

use crate::additive::{check_pair, pair_words};
use crate::block::{case_words, check_case, BlockSpec};
use crate::case::{Case, Family};
use crate::drazin::is_nilpotent;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::matrix::Matrix;
use crate::perturbation::{check_pert, SchurSpec};

/// SplitMix64: a 64-bit counter advanced by the golden-ratio increment and
/// passed through a two-multiply finaliser.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (modulo bias is negligible for the small `n` used).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        self.next_u64() % n
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// `true` with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// 64-bit FNV-1a, used to give each case its own stream.
pub fn fnv1a64(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// What a generated instance must additionally satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nontriviality {
    /// `a` (or `A`) is not nilpotent, i.e. its Drazin inverse is nonzero.
    pub a_core: bool,
    /// `A` is singular, so `A^π` is nonzero.
    pub a_singular: bool,
    /// `b` (or `B`) is nonzero.
    pub b_nonzero: bool,
    /// `b` is not nilpotent.
    pub b_core: bool,
    /// `C` is nonzero.
    pub c_nonzero: bool,
    /// `AB` and `CB` are nonzero (only `CB` when the case forces `A = 0`).
    pub cross_products: bool,
}

impl Nontriviality {
    pub fn for_case(case: Case) -> Self {
        match case.family() {
            Family::Pair => Nontriviality { a_core: true, b_nonzero: true, ..Default::default() },
            Family::Block => Nontriviality { b_nonzero: true, c_nonzero: true, ..Default::default() },
            Family::Schur => {
                Nontriviality { a_core: true, a_singular: true, b_nonzero: true, c_nonzero: true, ..Default::default() }
            }
            Family::Factors | Family::Square => Nontriviality::default(),
        }
    }
}

/// Everything that determines a generated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRecipe {
    pub case: Case,
    /// Size of `a`, `A`, `s`, or the row count of `x`. Drawn from the seed when `None`.
    pub n: Option<usize>,
    /// Size of `D`, or the column count of `x`. Drawn from the seed when `None`.
    pub m: Option<usize>,
    pub seed: u64,
    pub flags: Nontriviality,
}

impl GenRecipe {
    pub fn new(case: Case, seed: u64) -> Self {
        GenRecipe { case, n: None, m: None, seed, flags: Nontriviality::for_case(case) }
    }

    pub fn dims(mut self, n: usize, m: usize) -> Self {
        self.n = Some(n);
        self.m = Some(m);
        self
    }

    pub fn size(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn flags(mut self, flags: Nontriviality) -> Self {
        self.flags = flags;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInstance {
    pub a: Matrix,
    pub b: Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorInstance {
    pub x: Matrix,
    pub y: Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareInstance {
    pub s: Matrix,
}

/// Input to one case. The JSON form is the bare object of the variant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Instance {
    Block(BlockSpec),
    Schur(SchurSpec),
    Pair(PairInstance),
    Factors(FactorInstance),
    Square(SquareInstance),
}

impl Instance {
    pub fn family(&self) -> Family {
        match self {
            Instance::Block(_) => Family::Block,
            Instance::Schur(_) => Family::Schur,
            Instance::Pair(_) => Family::Pair,
            Instance::Factors(_) => Family::Factors,
            Instance::Square(_) => Family::Square,
        }
    }
}

/// `{"case": id, "seed": k, "instance": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceBundle {
    pub case: String,
    pub seed: u64,
    pub instance: Instance,
}

impl InstanceBundle {
    pub fn new(case: Case, seed: u64, instance: Instance) -> Self {
        InstanceBundle { case: case.id().to_string(), seed, instance }
    }
}

/// Dense integer matrix for cheap screening before exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn max_abs(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    fn mul(&self, rhs: &IntMat) -> IntMat {
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.at(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += x * rhs.at(k, j);
                }
            }
        }
        out
    }

    fn product(factors: &[&IntMat]) -> IntMat {
        let (first, rest) = factors.split_first().expect("empty product");
        rest.iter().fold((*first).clone(), |acc, m| acc.mul(m))
    }

    fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 1..self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    /// Determinant by fraction-free elimination.
    fn det(&self) -> i128 {
        let n = self.rows;
        let mut a: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        if n == 0 {
            1
        } else {
            sign * a[n * n - 1]
        }
    }

    fn random(rng: &mut SplitMix64, rows: usize, cols: usize, lo: i64, hi: i64, density: (u64, u64)) -> IntMat {
        let mut m = IntMat::zeros(rows, cols);
        for v in m.data.iter_mut() {
            if rng.chance(density.0, density.1) {
                *v = rng.range(lo, hi);
            }
        }
        m
    }

    fn direct_sum(parts: &[IntMat]) -> IntMat {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = IntMat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.set(r0 + i, c0 + j, p.at(i, j));
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).into())
    }
}

fn words_vanish(words: &[(&str, &str)], lookup: impl Fn(char) -> IntMat) -> bool {
    words.iter().all(|(_, w)| {
        let mats: Vec<IntMat> = w.chars().map(&lookup).collect();
        let refs: Vec<&IntMat> = mats.iter().collect();
        IntMat::product(&refs).is_zero()
    })
}

/// Matrices living on a few coordinate spaces; `sides[k] = (row space,
/// column space)` of matrix `k`. A similarity `S` on space `s` acts as
/// `X -> S X` on rows from `s` and `X -> X S⁻¹` on columns from `s`.
struct Frame {
    mats: Vec<IntMat>,
    sides: Vec<(usize, usize)>,
}

const ENTRY_BOUND: i64 = 3;

impl Frame {
    fn space_dim(&self, space: usize) -> usize {
        self.sides
            .iter()
            .zip(&self.mats)
            .find_map(|(&(r, c), m)| {
                if r == space {
                    Some(m.rows)
                } else if c == space {
                    Some(m.cols)
                } else {
                    None
                }
            })
            .unwrap_or(0)
    }

    fn permute(&mut self, space: usize, perm: &[usize]) {
        for (m, &(r, c)) in self.mats.iter_mut().zip(&self.sides) {
            let old = m.clone();
            for i in 0..m.rows {
                for j in 0..m.cols {
                    let si = if r == space { perm[i] } else { i };
                    let sj = if c == space { perm[j] } else { j };
                    m.set(i, j, old.at(si, sj));
                }
            }
        }
    }

    fn negate(&mut self, space: usize, k: usize) {
        for (m, &(r, c)) in self.mats.iter_mut().zip(&self.sides) {
            if r == space {
                for j in 0..m.cols {
                    m.set(k, j, -m.at(k, j));
                }
            }
            if c == space {
                for i in 0..m.rows {
                    m.set(i, k, -m.at(i, k));
                }
            }
        }
    }

    /// Conjugation by `I + t e_i e_jᵀ` on `space`, kept only if every entry
    /// stays within the bound.
    fn transvect(&mut self, space: usize, i: usize, j: usize, t: i64) -> bool {
        let mut next = self.mats.clone();
        for (m, &(r, c)) in next.iter_mut().zip(&self.sides) {
            if r == space {
                for col in 0..m.cols {
                    let v = m.at(i, col) + t * m.at(j, col);
                    m.set(i, col, v);
                }
            }
            if c == space {
                for row in 0..m.rows {
                    let v = m.at(row, j) - t * m.at(row, i);
                    m.set(row, j, v);
                }
            }
        }
        if next.iter().all(|m| m.max_abs() <= ENTRY_BOUND) {
            self.mats = next;
            true
        } else {
            false
        }
    }

    fn mix(&mut self, rng: &mut SplitMix64, spaces: usize) {
        for space in 0..spaces {
            let n = self.space_dim(space);
            if n == 0 {
                continue;
            }
            let mut perm: Vec<usize> = (0..n).collect();
            for k in (1..n).rev() {
                perm.swap(k, rng.below(k as u64 + 1) as usize);
            }
            self.permute(space, &perm);
            for k in 0..n {
                if rng.chance(1, 2) {
                    self.negate(space, k);
                }
            }
            if n < 2 {
                continue;
            }
            for _ in 0..2 * n {
                let i = rng.below(n as u64) as usize;
                let j = (i + 1 + rng.below(n as u64 - 1) as usize) % n;
                let t = if rng.chance(1, 2) { 1 } else { -1 };
                self.transvect(space, i, j, t);
            }
        }
    }
}

/// Splits `total` into `parts` sizes differing by at most one, shuffled.
fn balanced(total: usize, parts: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut sizes: Vec<usize> = (0..parts).map(|k| total / parts + usize::from(k < total % parts)).collect();
    for k in (1..parts).rev() {
        sizes.swap(k, rng.below(k as u64 + 1) as usize);
    }
    sizes
}

const DENSITIES: [(u64, u64); 3] = [(1, 4), (1, 2), (3, 4)];
const OUTER_ATTEMPTS: usize = 40;
const COMPONENT_TRIES: usize = 20_000;
const SCHUR_ATTEMPTS: usize = 20_000;

fn pair_component(case: Case, size: usize, flags: &Nontriviality, rng: &mut SplitMix64) -> Option<(IntMat, IntMat)> {
    let words = pair_words(case);
    for _ in 0..COMPONENT_TRIES {
        let density = DENSITIES[rng.below(3) as usize];
        let a = IntMat::random(rng, size, size, -1, 1, density);
        let b = IntMat::random(rng, size, size, -1, 1, density);
        if flags.a_core && a.is_nilpotent() {
            continue;
        }
        if flags.b_nonzero && b.is_zero() {
            continue;
        }
        if flags.b_core && b.is_nilpotent() {
            continue;
        }
        if words_vanish(words, |c| if c == 'a' { a.clone() } else { b.clone() }) {
            return Some((a, b));
        }
    }
    None
}

fn gen_pair(case: Case, n: usize, flags: &Nontriviality, rng: &mut SplitMix64) -> Option<PairInstance> {
    let parts = balanced(n, n.div_ceil(4).max(1), rng);
    let mut comps = Vec::new();
    for (k, &size) in parts.iter().enumerate() {
        let required = if k == 0 { *flags } else { Nontriviality::default() };
        comps.push(pair_component(case, size, &required, rng)?);
    }
    let a = IntMat::direct_sum(&comps.iter().map(|c| c.0.clone()).collect::<Vec<_>>());
    let b = IntMat::direct_sum(&comps.iter().map(|c| c.1.clone()).collect::<Vec<_>>());
    let mut frame = Frame { mats: vec![a, b], sides: vec![(0, 0), (0, 0)] };
    frame.mix(rng, 1);
    let inst = PairInstance { a: frame.mats[0].to_matrix(), b: frame.mats[1].to_matrix() };
    let holds = check_pair(case, &inst.a, &inst.b).ok()?.all_hold();
    let nontrivial = (!flags.a_core || !is_nilpotent(&inst.a))
        && (!flags.b_nonzero || !inst.b.is_zero())
        && (!flags.b_core || !is_nilpotent(&inst.b));
    (holds && nontrivial).then_some(inst)
}

fn forces_zero_a(case: Case) -> bool {
    case_words(case).iter().any(|(_, w)| *w == "A")
}

fn block_flags_hold(case: Case, flags: &Nontriviality, get: impl Fn(&str) -> bool) -> bool {
    (!flags.b_nonzero || get("B"))
        && (!flags.c_nonzero || get("C"))
        && (!flags.cross_products || ((forces_zero_a(case) || get("AB")) && get("CB")))
}

fn block_component(case: Case, n: usize, m: usize, flags: &Nontriviality, rng: &mut SplitMix64) -> Option<[IntMat; 4]> {
    let words = case_words(case);
    let zero_a = words.iter().any(|(_, w)| *w == "A");
    let zero_d = words.iter().any(|(_, w)| *w == "D");
    for _ in 0..COMPONENT_TRIES {
        let density = DENSITIES[rng.below(3) as usize];
        let a = if zero_a { IntMat::zeros(n, n) } else { IntMat::random(rng, n, n, -1, 1, density) };
        let b = IntMat::random(rng, n, m, -1, 1, density);
        let c = IntMat::random(rng, m, n, -1, 1, density);
        let d = if zero_d { IntMat::zeros(m, m) } else { IntMat::random(rng, m, m, -1, 1, density) };
        let blocks = [a, b, c, d];
        let lookup = |ch: char| blocks[(ch as u8 - b'A') as usize].clone();
        let nonzero = |w: &str| {
            let mats: Vec<IntMat> = w.chars().map(lookup).collect();
            !IntMat::product(&mats.iter().collect::<Vec<_>>()).is_zero()
        };
        if block_flags_hold(case, flags, nonzero) && words_vanish(words, lookup) {
            return Some(blocks);
        }
    }
    None
}

fn gen_block(case: Case, n: usize, m: usize, flags: &Nontriviality, rng: &mut SplitMix64) -> Option<BlockSpec> {
    let k = n.div_ceil(3).max(m.div_ceil(3)).min(n).min(m).max(1);
    let ns = balanced(n, k, rng);
    let ms = balanced(m, k, rng);
    let mut comps = Vec::new();
    for i in 0..k {
        let required = if i == 0 { *flags } else { Nontriviality::default() };
        comps.push(block_component(case, ns[i], ms[i], &required, rng)?);
    }
    let stack = |idx: usize| IntMat::direct_sum(&comps.iter().map(|c| c[idx].clone()).collect::<Vec<_>>());
    let mut frame = Frame { mats: vec![stack(0), stack(1), stack(2), stack(3)], sides: vec![(0, 0), (0, 1), (1, 0), (1, 1)] };
    frame.mix(rng, 2);
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| frame.mats[i].to_matrix());
    let spec = BlockSpec::new(a, b, c, d).ok()?;
    let holds = check_case(case, &spec).ok()?.all_hold();
    let nontrivial = block_flags_hold(case, flags, |w| !spec.word(w).is_zero());
    (holds && nontrivial).then_some(spec)
}

fn gen_schur(case: Case, n: usize, m: usize, flags: &Nontriviality, rng: &mut SplitMix64) -> Option<SchurSpec> {
    let r = if flags.a_singular && n >= 2 {
        1 + rng.below(n as u64 - 1) as usize
    } else if flags.a_core {
        1 + rng.below(n as u64) as usize
    } else {
        rng.below(n as u64 + 1) as usize
    };
    let core = loop {
        let c = IntMat::random(rng, r, r, -1, 1, (2, 3));
        if c.det() != 0 {
            break c;
        }
    };
    let mut nil = IntMat::zeros(n - r, n - r);
    for i in 0..n - r {
        for j in i + 1..n - r {
            if rng.chance(1, 2) {
                nil.set(i, j, rng.range(-1, 1));
            }
        }
    }
    let density = DENSITIES[rng.below(2) as usize];
    let b = IntMat::random(rng, n, m, -1, 1, density);
    let c = IntMat::random(rng, m, n, -1, 1, density);
    if (flags.b_nonzero && b.is_zero()) || (flags.c_nonzero && c.is_zero()) {
        return None;
    }
    let a = IntMat::direct_sum(&[core, nil]);
    let mut frame = Frame { mats: vec![a, b, c], sides: vec![(0, 0), (0, 1), (1, 0)] };
    frame.mix(rng, 2);
    let spec = SchurSpec::new(frame.mats[0].to_matrix(), frame.mats[1].to_matrix(), frame.mats[2].to_matrix()).ok()?;
    let holds = check_pert(case, &spec).ok()?.all_hold();
    let a_nilpotent = is_nilpotent(&spec.a);
    let a_singular = spec.a.rank() < n;
    let nontrivial = (!flags.a_core || !a_nilpotent) && (!flags.a_singular || a_singular);
    (holds && nontrivial).then_some(spec)
}

fn fixture(recipe: &GenRecipe) -> Option<Instance> {
    if recipe.seed != 0 {
        return None;
    }
    let dims = (recipe.n.unwrap_or(0), recipe.m.unwrap_or(0));
    match recipe.case {
        Case::C34 if matches!(dims, (3, 1) | (0, 0)) => Some(Instance::Block(fixtures::example_3_5())),
        Case::T41 if matches!(dims, (4, 2) | (0, 0)) => Some(Instance::Schur(fixtures::example_4_3())),
        _ => None,
    }
}

fn default_dims(case: Case, rng: &mut SplitMix64) -> (usize, usize) {
    // BC = 0 with B, C nonzero needs a column of C inside the kernel of B.
    let min_m = if case_words(case).iter().any(|(_, w)| *w == "BC") { 2 } else { 1 };
    let mut pick = |lo: i64, hi: i64| rng.range(lo, hi) as usize;
    match case.family() {
        Family::Pair => (pick(3, 7), 0),
        Family::Factors => (pick(1, 4), pick(1, 4)),
        Family::Square => (pick(2, 6), 0),
        // With n = m = 1 and nonzero scalars B, C every product BC, CB is
        // nonzero, which rules out most block cases.
        Family::Block => loop {
            let dims = (pick(1, 3), pick(1, 3));
            if dims != (1, 1) && dims.1 >= min_m {
                break dims;
            }
        },
        Family::Schur => (pick(2, 5), pick(1, 3)),
    }
}

/// Square `n x n` with entries uniform in `lo..=hi`, each kept with
/// probability `density`.
pub fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize, lo: i64, hi: i64, density: (u64, u64)) -> Matrix {
    IntMat::random(rng, rows, cols, lo, hi, density).to_matrix()
}

/// The instance a recipe determines. Fails with [`Error::Exhausted`] rather
/// than return something that misses the predicate or the flags.
pub fn generate(recipe: &GenRecipe) -> Result<Instance> {
    if let Some(inst) = fixture(recipe) {
        return Ok(inst);
    }
    let case = recipe.case;
    let mut rng = SplitMix64::new(recipe.seed ^ fnv1a64(case.id()));
    let (dn, dm) = default_dims(case, &mut rng);
    let n = recipe.n.unwrap_or(dn);
    let m = recipe.m.unwrap_or(dm);
    let flags = &recipe.flags;
    let exhausted = |attempts| Error::Exhausted { case: case.id().to_string(), seed: recipe.seed, attempts };

    match case.family() {
        Family::Pair => (0..OUTER_ATTEMPTS)
            .find_map(|_| gen_pair(case, n, flags, &mut rng))
            .map(Instance::Pair)
            .ok_or_else(|| exhausted(OUTER_ATTEMPTS)),
        Family::Block => (0..OUTER_ATTEMPTS)
            .find_map(|_| gen_block(case, n, m, flags, &mut rng))
            .map(Instance::Block)
            .ok_or_else(|| exhausted(OUTER_ATTEMPTS)),
        Family::Schur => (0..SCHUR_ATTEMPTS)
            .find_map(|_| gen_schur(case, n, m, flags, &mut rng))
            .map(Instance::Schur)
            .ok_or_else(|| exhausted(SCHUR_ATTEMPTS)),
        Family::Factors => {
            let density = DENSITIES[rng.below(3) as usize];
            let x = random_matrix(&mut rng, n, m, -2, 2, density);
            let y = random_matrix(&mut rng, m, n, -2, 2, density);
            Ok(Instance::Factors(FactorInstance { x, y }))
        }
        Family::Square => {
            let density = DENSITIES[rng.below(3) as usize];
            Ok(Instance::Square(SquareInstance { s: random_matrix(&mut rng, n, n, -2, 2, density) }))
        }
    }
}

/// [`generate`] wrapped as a JSON bundle.
pub fn generate_bundle(recipe: &GenRecipe) -> Result<InstanceBundle> {
    Ok(InstanceBundle::new(recipe.case, recipe.seed, generate(recipe)?))
}

/// Upper limit on the candidates [`exhaustive_small`] will walk.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 24;

/// Every instance of the given shape with entries from `values` that
/// satisfies the case, in odometer order (first entry fastest). `n` is the
/// size of `a`/`A`/`s` or the rows of `x`; `m` the size of `D` or the columns
/// of `x`. Structurally zero blocks of the lemma cases are not enumerated.
pub fn exhaustive_small(case: Case, n: usize, m: usize, values: &[i64]) -> Result<impl Iterator<Item = Instance>> {
    let shapes: Vec<(usize, usize)> = match case.family() {
        Family::Pair => vec![(n, n), (n, n)],
        Family::Factors => vec![(n, m), (m, n)],
        Family::Square => vec![(n, n)],
        Family::Block => vec![(n, n), (n, m), (m, n), (m, m)],
        Family::Schur => vec![(n, n), (n, m), (m, n)],
    };
    let words = match case.family() {
        Family::Pair => pair_words(case),
        Family::Block => case_words(case),
        _ => &[],
    };
    let forced_zero: Vec<bool> = match case.family() {
        Family::Block => ["A", "B", "C", "D"].iter().map(|l| words.iter().any(|(_, w)| w == l)).collect(),
        _ => vec![false; shapes.len()],
    };
    let free: usize = shapes.iter().zip(&forced_zero).filter(|(_, &z)| !z).map(|((r, c), _)| r * c).sum();
    let candidates = (values.len() as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    if candidates > EXHAUSTIVE_LIMIT {
        return Err(Error::SearchTooLarge { case: case.id().to_string(), candidates, limit: EXHAUSTIVE_LIMIT });
    }
    let values = values.to_vec();
    let mut digits = vec![0usize; free];
    let mut done = values.is_empty() && free > 0;

    let iter = std::iter::from_fn(move || {
        while !done {
            let mut cursor = digits.iter();
            let mats: Vec<IntMat> = shapes
                .iter()
                .zip(&forced_zero)
                .map(|(&(r, c), &zero)| {
                    let mut mat = IntMat::zeros(r, c);
                    if !zero {
                        for v in mat.data.iter_mut() {
                            *v = values[*cursor.next().expect("digit per free entry")];
                        }
                    }
                    mat
                })
                .collect();
            // advance the odometer
            let mut k = 0;
            loop {
                if k == digits.len() {
                    done = true;
                    break;
                }
                digits[k] += 1;
                if digits[k] < values.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if let Some(inst) = accept(case, &mats, words) {
                return Some(inst);
            }
        }
        None
    });
    Ok(iter)
}

fn accept(case: Case, mats: &[IntMat], words: &[(&str, &str)]) -> Option<Instance> {
    let m = |k: usize| mats[k].to_matrix();
    match case.family() {
        Family::Pair => words_vanish(words, |c| mats[(c as u8 - b'a') as usize].clone())
            .then(|| Instance::Pair(PairInstance { a: m(0), b: m(1) })),
        Family::Block => words_vanish(words, |c| mats[(c as u8 - b'A') as usize].clone())
            .then(|| Instance::Block(BlockSpec::new(m(0), m(1), m(2), m(3)).expect("shapes match"))),
        Family::Schur => {
            let spec = SchurSpec::new(m(0), m(1), m(2)).expect("shapes match");
            check_pert(case, &spec).ok()?.all_hold().then_some(Instance::Schur(spec))
        }
        Family::Factors => Some(Instance::Factors(FactorInstance { x: m(0), y: m(1) })),
        Family::Square => Some(Instance::Square(SquareInstance { s: m(0) })),
    }
}
