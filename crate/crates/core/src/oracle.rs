//! Brute-force ground truth for small groups: enumerate `GL_m(F_p)`, split it
//! into `(S, P_{r,2n-r})` double cosets by generator closure, and certify the
//! closed-form classification against that partition.
//!
//! Matrices are packed as base-`p` integers (row-major, entry `(0,0)` most
//! significant), so the whole matrix space indexes a flat array. The
//! partitioning step uses nothing from [`crate::cosets`].

use serde::Serialize;

use crate::cosets::{check_params, classify, count, kl_bounds, representative, CosetLabel};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::{is_in_parabolic, Matrix};

/// Largest matrix space (`p^{m^2}`) the oracle will index: `3^16`.
pub const MAX_SPACE: u64 = 43_046_721;

/// Matrix spaces above this size need an explicit opt-in.
pub const EXPENSIVE_SPACE: u64 = 1 << 20;

const MAX_DIM: usize = 4;
const UNVISITED: u16 = u16::MAX;

type Cell = [u32; MAX_DIM * MAX_DIM];

/// `p^{m^2}`, or a size-limit error if it exceeds [`MAX_SPACE`].
pub fn space_size(m: usize, p: u32) -> Result<u64> {
    let too_big = || Error::SizeLimit(format!("GL_{m}(F_{p}) is too large to enumerate"));
    if m == 0 || m > MAX_DIM {
        return Err(too_big());
    }
    let size = (p as u64).checked_pow((m * m) as u32).ok_or_else(too_big)?;
    if size > MAX_SPACE {
        return Err(too_big());
    }
    Ok(size)
}

/// Whether certifying `GL_{2n}(F_p)` counts as expensive.
pub fn is_expensive(n: usize, p: u32) -> bool {
    (p as u64)
        .checked_pow((4 * n * n) as u32)
        .map_or(true, |s| s > EXPENSIVE_SPACE)
}

/// `|GL_m(F_p)| = ∏_{i<m} (p^m - p^i)`.
pub fn gl_order(m: usize, p: u32) -> u64 {
    let pm = (p as u64).pow(m as u32);
    (0..m).map(|i| pm - (p as u64).pow(i as u32)).product()
}

#[derive(Debug, Clone, Copy)]
struct Codec {
    m: usize,
    p: u32,
    size: u64,
}

impl Codec {
    fn new(m: usize, p: u32) -> Result<Codec> {
        let size = space_size(m, p)?;
        Ok(Codec { m, p, size })
    }

    fn decode(&self, mut code: u32, cell: &mut Cell) {
        for idx in (0..self.m * self.m).rev() {
            cell[idx] = code % self.p;
            code /= self.p;
        }
    }

    fn encode(&self, cell: &Cell) -> u32 {
        cell[..self.m * self.m]
            .iter()
            .fold(0u32, |acc, &v| acc * self.p + v)
    }

    fn decode_matrix(&self, field: PrimeField, code: u32) -> Matrix {
        let mut cell = [0; MAX_DIM * MAX_DIM];
        self.decode(code, &mut cell);
        Matrix::from_residues(field, self.m, self.m, cell[..self.m * self.m].to_vec())
            .expect("residues are reduced")
    }

    fn code_of(&self, g: &Matrix) -> u32 {
        let mut cell = [0; MAX_DIM * MAX_DIM];
        cell[..self.m * self.m].copy_from_slice(g.residues());
        self.encode(&cell)
    }

    fn is_invertible(&self, cell: &Cell) -> bool {
        let (m, p) = (self.m, self.p);
        let mut a = *cell;
        for col in 0..m {
            let Some(piv) = (col..m).find(|&i| a[i * m + col] != 0) else {
                return false;
            };
            for j in 0..m {
                a.swap(col * m + j, piv * m + j);
            }
            let inv = mod_inverse(a[col * m + col], p);
            for i in col + 1..m {
                let f = a[i * m + col] * inv % p;
                if f != 0 {
                    for j in col..m {
                        a[i * m + j] = (a[i * m + j] + (p - f) * a[col * m + j]) % p;
                    }
                }
            }
        }
        true
    }
}

/// `a^{p-2} mod p`; the oracle's moduli are tiny.
fn mod_inverse(a: u32, p: u32) -> u32 {
    (0..p - 2).fold(1, |acc, _| acc * a % p)
}

/// Every element of `GL_m(F_p)`, in increasing packed order.
pub fn enumerate_group(m: usize, p: u32) -> Result<impl Iterator<Item = Matrix>> {
    let field = PrimeField::new(p as u64)?;
    let codec = Codec::new(m, p)?;
    Ok((0..codec.size as u32).filter_map(move |code| {
        let mut cell = [0; MAX_DIM * MAX_DIM];
        codec.decode(code, &mut cell);
        codec
            .is_invertible(&cell)
            .then(|| codec.decode_matrix(field, code))
    }))
}

/// An elementary operation: `line[dst] += c * line[src]` or
/// `line[i] *= c`, on rows (left multiplication) or columns (right).
#[derive(Debug, Clone, Copy)]
enum Elementary {
    Add { dst: usize, src: usize, c: u32 },
    Scale { i: usize, c: u32 },
}

/// Which generating sets to close under. Both generate the same groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generators {
    /// Unit transvections and a primitive-root scaling.
    Standard,
    /// Inverse transvections, the inverse primitive root, non-unit
    /// unipotent entries, and a redundant block swap in the Levi factor.
    Alternate,
}

struct GeneratorSet {
    left: Vec<Vec<Elementary>>,
    right: Vec<Vec<Elementary>>,
}

impl GeneratorSet {
    fn new(field: PrimeField, n: usize, r: usize, choice: Generators) -> GeneratorSet {
        let p = field.modulus();
        let omega = field.primitive_root();
        let (c, scale, unip) = match choice {
            Generators::Standard => (1, omega, 1),
            Generators::Alternate => (p - 1, field.inv(omega).expect("nonzero"), omega),
        };
        let m = 2 * n;
        let mut left = Vec::new();
        // ΔGL_n: the same row operation on both halves.
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                left.push(vec![
                    Elementary::Add { dst: i, src: j, c },
                    Elementary::Add {
                        dst: n + i,
                        src: n + j,
                        c,
                    },
                ]);
            }
        }
        left.push(vec![
            Elementary::Scale { i: 0, c: scale },
            Elementary::Scale { i: n, c: scale },
        ]);
        // Unipotent part: I + unip * E_{i, n+j}.
        for i in 0..n {
            for j in 0..n {
                left.push(vec![Elementary::Add {
                    dst: i,
                    src: n + j,
                    c: unip,
                }]);
            }
        }

        let mut right = Vec::new();
        let same_block = |i: usize, j: usize| (i < r) == (j < r);
        for i in 0..m {
            for j in (0..m).filter(|&j| j != i) {
                if same_block(i, j) {
                    right.push(vec![Elementary::Add { dst: j, src: i, c }]);
                } else if i < r {
                    right.push(vec![Elementary::Add {
                        dst: j,
                        src: i,
                        c: unip,
                    }]);
                }
            }
        }
        right.push(vec![Elementary::Scale { i: 0, c: scale }]);
        right.push(vec![Elementary::Scale { i: r, c: scale }]);
        if choice == Generators::Alternate && r >= 2 {
            // Swap of the first two columns: three column additions and a sign.
            right.push(vec![
                Elementary::Add {
                    dst: 1,
                    src: 0,
                    c: 1,
                },
                Elementary::Add {
                    dst: 0,
                    src: 1,
                    c: p - 1,
                },
                Elementary::Add {
                    dst: 1,
                    src: 0,
                    c: 1,
                },
                Elementary::Scale { i: 0, c: p - 1 },
            ]);
        }
        GeneratorSet { left, right }
    }
}

fn apply_rows(cell: &mut Cell, m: usize, p: u32, ops: &[Elementary]) {
    for op in ops {
        match *op {
            Elementary::Add { dst, src, c } => {
                for k in 0..m {
                    cell[dst * m + k] = (cell[dst * m + k] + c * cell[src * m + k]) % p;
                }
            }
            Elementary::Scale { i, c } => {
                for k in 0..m {
                    cell[i * m + k] = cell[i * m + k] * c % p;
                }
            }
        }
    }
}

fn apply_cols(cell: &mut Cell, m: usize, p: u32, ops: &[Elementary]) {
    for op in ops {
        match *op {
            Elementary::Add { dst, src, c } => {
                for k in 0..m {
                    cell[k * m + dst] = (cell[k * m + dst] + c * cell[k * m + src]) % p;
                }
            }
            Elementary::Scale { i, c } => {
                for k in 0..m {
                    cell[k * m + i] = cell[k * m + i] * c % p;
                }
            }
        }
    }
}

/// The partition of `GL_{2n}(F_p)` into `(S, P_{r,2n-r})` double cosets.
///
/// Classes are numbered in order of their smallest packed element, which is
/// also the seed each closure started from.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    n: usize,
    r: usize,
    field: PrimeField,
    codec: Codec,
    class_of: Vec<u16>,
    sizes: Vec<u64>,
    seeds: Vec<u32>,
}

impl CosetPartition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Total number of elements covered by the classes.
    pub fn group_order(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn seed(&self, class: usize) -> Matrix {
        self.codec.decode_matrix(self.field, self.seeds[class])
    }

    /// The class of an invertible `2n x 2n` matrix over the same field.
    pub fn class_of(&self, g: &Matrix) -> Option<usize> {
        if g.field() != self.field || g.rows() != 2 * self.n || g.cols() != 2 * self.n {
            return None;
        }
        match self.class_of[self.codec.code_of(g) as usize] {
            UNVISITED => None,
            c => Some(c as usize),
        }
    }

    /// Every group element with its class index, in packed order.
    pub fn elements(&self) -> impl Iterator<Item = (usize, Matrix)> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != UNVISITED)
            .map(|(code, &c)| {
                (
                    c as usize,
                    self.codec.decode_matrix(self.field, code as u32),
                )
            })
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = Matrix> + '_ {
        self.elements()
            .filter(move |(c, _)| *c == class)
            .map(|(_, g)| g)
    }

    /// Whether both partitions assign every element to the same class.
    pub fn same_partition(&self, other: &CosetPartition) -> bool {
        self.field == other.field && self.n == other.n && self.class_of == other.class_of
    }
}

/// Splits `GL_{2n}(F_p)` into `(S, P_{r,2n-r})` double cosets by closing
/// each unvisited invertible matrix under left multiplication by generators
/// of `S` and right multiplication by generators of `P_{r,2n-r}`.
pub fn double_coset_partition(
    n: usize,
    p: u32,
    r: usize,
    generators: Generators,
) -> Result<CosetPartition> {
    check_params(n, r)?;
    let field = PrimeField::new(p as u64)?;
    let m = 2 * n;
    let codec = Codec::new(m, p)?;
    let gens = GeneratorSet::new(field, n, r, generators);

    let mut class_of = vec![UNVISITED; codec.size as usize];
    let mut sizes = Vec::new();
    let mut seeds = Vec::new();
    let mut stack = Vec::new();
    let mut cell = [0; MAX_DIM * MAX_DIM];

    for seed in 0..codec.size as u32 {
        if class_of[seed as usize] != UNVISITED {
            continue;
        }
        codec.decode(seed, &mut cell);
        if !codec.is_invertible(&cell) {
            continue;
        }
        let id = sizes.len();
        if id >= UNVISITED as usize {
            return Err(Error::SizeLimit("too many classes".into()));
        }
        let id = id as u16;
        class_of[seed as usize] = id;
        stack.push(seed);
        let mut size = 0u64;
        while let Some(code) = stack.pop() {
            size += 1;
            codec.decode(code, &mut cell);
            let moves = gens
                .left
                .iter()
                .map(|ops| (true, ops))
                .chain(gens.right.iter().map(|ops| (false, ops)));
            for (on_left, ops) in moves {
                let mut next = cell;
                if on_left {
                    apply_rows(&mut next, m, p, ops);
                } else {
                    apply_cols(&mut next, m, p, ops);
                }
                let c = codec.encode(&next) as usize;
                if class_of[c] == UNVISITED {
                    class_of[c] = id;
                    stack.push(c as u32);
                }
            }
        }
        sizes.push(size);
        seeds.push(seed);
    }
    Ok(CosetPartition {
        n,
        r,
        field,
        codec,
        class_of,
        sizes,
        seeds,
    })
}

/// One checked claim, with a counterexample when it fails.
#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<Matrix>,
}

impl Assertion {
    fn new(name: &str) -> Assertion {
        Assertion {
            name: name.into(),
            passed: true,
            detail: String::new(),
            witness: None,
        }
    }

    fn fail(&mut self, detail: String, witness: Option<Matrix>) {
        if self.passed {
            self.passed = false;
            self.detail = detail;
            self.witness = witness;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub index: usize,
    pub size: u64,
    pub seed: Matrix,
    /// `classify` of the seed.
    pub label: Option<CosetLabel>,
    /// The representative `w_{k,l}` found in this class, if exactly one was.
    pub representative: Option<Matrix>,
    pub representatives_found: usize,
    /// `|S ∩ w P w^{-1}|` for that representative.
    pub stabilizer_order: Option<u64>,
    /// `|S| |P| / |S ∩ w P w^{-1}|`.
    pub predicted_size: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    pub n: usize,
    pub p: u32,
    pub r: usize,
    pub group_order: u64,
    pub shalika_order: u64,
    pub parabolic_order: u64,
    pub expected_classes: u64,
    pub classes: Vec<ClassReport>,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
}

/// `|S| = |GL_n| p^{n^2}`.
pub fn shalika_order(n: usize, p: u32) -> u64 {
    gl_order(n, p) * (p as u64).pow((n * n) as u32)
}

/// `|P_{r,2n-r}| = |GL_r| |GL_{2n-r}| p^{r(2n-r)}`.
pub fn parabolic_order(n: usize, r: usize, p: u32) -> u64 {
    gl_order(r, p) * gl_order(2 * n - r, p) * (p as u64).pow((r * (2 * n - r)) as u32)
}

/// Every element `[[g, x], [0, g]]` of `S` over `F_p`.
fn shalika_elements(field: PrimeField, n: usize) -> Result<Vec<Matrix>> {
    let p = field.modulus();
    let blocks: Vec<Matrix> = enumerate_group(n, p)?.collect();
    let codec = Codec::new(n, p)?;
    let mut out = Vec::new();
    for g in &blocks {
        for x in 0..codec.size as u32 {
            let x = codec.decode_matrix(field, x);
            let mut s = Matrix::zeros(field, 2 * n, 2 * n);
            for i in 0..n {
                for j in 0..n {
                    s.set(i, j, g.residue(i, j));
                    s.set(n + i, n + j, g.residue(i, j));
                    s.set(i, n + j, x.residue(i, j));
                }
            }
            out.push(s);
        }
    }
    Ok(out)
}

/// Checks, against the brute-force partition, that
///
/// 1. the number of classes is `count(n, r)`,
/// 2. each class holds exactly one representative `w_{k,l}`,
/// 3. `classify` is constant on each class and separates classes,
/// 4. each class has size `|S| |P| / |S ∩ w P w^{-1}|`.
///
/// The partition itself must also cover exactly `|GL_{2n}(F_p)|` elements.
/// Large groups are refused unless `allow_expensive` is set.
pub fn certify(n: usize, p: u32, r: usize, allow_expensive: bool) -> Result<CertificationReport> {
    check_params(n, r)?;
    let field = PrimeField::new(p as u64)?;
    space_size(2 * n, p)?;
    if is_expensive(n, p) && !allow_expensive {
        return Err(Error::SizeLimit(format!(
            "certifying GL_{}(F_{p}) is expensive and must be requested explicitly",
            2 * n
        )));
    }
    let partition = double_coset_partition(n, p, r, Generators::Standard)?;
    let classes_n = partition.class_count();
    let group_order = gl_order(2 * n, p);
    let (s_order, p_order) = (shalika_order(n, p), parabolic_order(n, r, p));
    let expected_classes = count(n, r)?;

    let mut cover = Assertion::new("partition covers the group");
    if partition.group_order() != group_order {
        cover.fail(
            format!(
                "classes cover {} elements, expected {group_order}",
                partition.group_order()
            ),
            None,
        );
    }

    let mut class_count = Assertion::new("class count");
    class_count.detail = format!("{classes_n} classes, formula gives {expected_classes}");
    if classes_n as u64 != expected_classes {
        class_count.passed = false;
    }

    let mut reports: Vec<ClassReport> = (0..classes_n)
        .map(|c| {
            let seed = partition.seed(c);
            ClassReport {
                index: c,
                size: partition.sizes()[c],
                label: classify(&seed, n, r).ok(),
                seed,
                representative: None,
                representatives_found: 0,
                stabilizer_order: None,
                predicted_size: None,
            }
        })
        .collect();

    let mut one_rep = Assertion::new("one representative per class");
    let mut rep_of_class: Vec<Option<Matrix>> = vec![None; classes_n];
    for label in kl_bounds(n, r)? {
        let w = representative(field, &label);
        match partition.class_of(&w) {
            Some(c) => {
                reports[c].representatives_found += 1;
                rep_of_class[c] = Some(w);
            }
            None => one_rep.fail(
                format!("representative {label} is not in any class"),
                Some(w),
            ),
        }
    }
    for rep in &mut reports {
        if rep.representatives_found == 1 {
            rep.representative = rep_of_class[rep.index].clone();
        } else {
            one_rep.fail(
                format!(
                    "class {} holds {} representatives",
                    rep.index, rep.representatives_found
                ),
                Some(rep.seed.clone()),
            );
        }
    }

    let mut constant = Assertion::new("classify is constant on classes and separates them");
    for (c, g) in partition.elements() {
        let label = classify(&g, n, r).ok();
        if label.is_none() || label != reports[c].label {
            constant.fail(
                format!(
                    "element of class {c} classified as {label:?}, class label {:?}",
                    reports[c].label
                ),
                Some(g),
            );
            break;
        }
    }
    for a in 0..classes_n {
        for b in a + 1..classes_n {
            if reports[a].label == reports[b].label {
                constant.fail(
                    format!("classes {a} and {b} share a label"),
                    Some(reports[b].seed.clone()),
                );
            }
        }
    }

    let mut orbit = Assertion::new("class sizes match orbit-stabilizer");
    let s_elements = shalika_elements(field, n)?;
    for rep in &mut reports {
        let Some(w) = rep.representative.clone() else {
            orbit.fail(
                format!("class {} has no single representative", rep.index),
                None,
            );
            continue;
        };
        let w_inv = w.transpose();
        let mut stab = 0u64;
        for s in &s_elements {
            if is_in_parabolic(&w_inv.mul(s)?.mul(&w)?, r)? {
                stab += 1;
            }
        }
        let predicted = s_order * p_order / stab;
        rep.stabilizer_order = Some(stab);
        rep.predicted_size = Some(predicted);
        if predicted != rep.size {
            orbit.fail(
                format!(
                    "class {} has {} elements, predicted {predicted}",
                    rep.index, rep.size
                ),
                Some(w),
            );
        }
    }

    let assertions = vec![cover, class_count, one_rep, constant, orbit];
    let passed = assertions.iter().all(|a| a.passed);
    Ok(CertificationReport {
        n,
        p,
        r,
        group_order,
        shalika_order: s_order,
        parabolic_order: p_order,
        expected_classes,
        classes: reports,
        assertions,
        passed,
    })
}
