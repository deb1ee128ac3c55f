//! Point-set generators on the unit cube.
//!
//! Four recipes are available: iid uniform draws, plain Halton, Halton with a
//! per-base random digit permutation followed by a uniform random shift
//! modulo one, and the midpoint (cell-centred) tensor grid. Generation is a
//! pure function of `(SequenceSpec, n)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// A point in `[0, 1)^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("point must have at least one coordinate".into()));
        }
        if let Some(c) = coords.iter().find(|c| !(0.0..1.0).contains(*c)) {
            return Err(Error::InvalidArgument(format!("coordinate {c} outside [0, 1)")));
        }
        Ok(Point(coords))
    }

    pub fn dims(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    IidUniform,
    Halton,
    ScrambledShiftedHalton,
    MidpointGrid,
}

impl SequenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SequenceKind::IidUniform => "iid-uniform",
            SequenceKind::Halton => "halton",
            SequenceKind::ScrambledShiftedHalton => "scrambled-shifted-halton",
            SequenceKind::MidpointGrid => "midpoint-grid",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "iid-uniform" => SequenceKind::IidUniform,
            "halton" => SequenceKind::Halton,
            "scrambled-shifted-halton" => SequenceKind::ScrambledShiftedHalton,
            "midpoint-grid" => SequenceKind::MidpointGrid,
            other => return Err(Error::InvalidSpec(format!("unknown sequence kind `{other}`"))),
        })
    }
}

/// Recipe for a point set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub dims: usize,
    /// Ignored by the deterministic kinds.
    #[serde(default)]
    pub seed: u64,
    /// Halton bases; the first `dims` primes when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<u32>>,
    /// Points per axis for the midpoint grid; inferred from `n` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

impl SequenceSpec {
    pub fn new(kind: SequenceKind, dims: usize) -> Self {
        SequenceSpec { kind, dims, seed: 0, bases: None, resolution: None }
    }

    pub fn iid(dims: usize, seed: u64) -> Self {
        Self::new(SequenceKind::IidUniform, dims).with_seed(seed)
    }

    pub fn halton(dims: usize) -> Self {
        Self::new(SequenceKind::Halton, dims)
    }

    pub fn scrambled_shifted_halton(dims: usize, seed: u64) -> Self {
        Self::new(SequenceKind::ScrambledShiftedHalton, dims).with_seed(seed)
    }

    pub fn midpoint_grid(dims: usize, resolution: usize) -> Self {
        SequenceSpec { resolution: Some(resolution), ..Self::new(SequenceKind::MidpointGrid, dims) }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_bases(mut self, bases: Vec<u32>) -> Self {
        self.bases = Some(bases);
        self
    }

    /// Bases in use, after validation.
    pub fn resolved_bases(&self) -> Result<Vec<u32>> {
        match &self.bases {
            None => Ok(first_primes(self.dims)),
            Some(b) => {
                if b.len() != self.dims {
                    return Err(Error::InvalidSpec(format!("{} bases given for {} dimensions", b.len(), self.dims)));
                }
                if let Some(p) = b.iter().find(|&&p| !is_prime(p)) {
                    return Err(Error::InvalidSpec(format!("base {p} is not prime")));
                }
                if b.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidSpec("bases must be strictly ascending".into()));
                }
                Ok(b.clone())
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims == 0 {
            return Err(Error::InvalidSpec("dims must be positive".into()));
        }
        if matches!(self.kind, SequenceKind::Halton | SequenceKind::ScrambledShiftedHalton) {
            self.resolved_bases()?;
        }
        if self.resolution == Some(0) {
            return Err(Error::InvalidSpec("grid resolution must be positive".into()));
        }
        Ok(())
    }
}

/// `n` points of common dimension, together with the recipe that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dims: usize,
    coords: Vec<f64>,
    spec: Option<SequenceSpec>,
}

impl PointSet {
    /// Builds a point set from explicit points (no provenance).
    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let first = points.first().ok_or_else(|| Error::InvalidArgument("point set must be nonempty".into()))?;
        let dims = first.as_ref().len();
        let mut coords = Vec::with_capacity(dims * points.len());
        for p in points {
            let p = Point::new(p.as_ref().to_vec())?;
            if p.dims() != dims {
                return Err(Error::DimensionMismatch { expected: dims, found: p.dims() });
            }
            coords.extend_from_slice(p.coords());
        }
        Ok(PointSet { dims, coords, spec: None })
    }

    /// One-dimensional convenience constructor.
    pub fn from_1d(xs: &[f64]) -> Result<Self> {
        let pts: Vec<[f64; 1]> = xs.iter().map(|&x| [x]).collect();
        Self::from_points(&pts)
    }

    fn from_raw(dims: usize, coords: Vec<f64>, spec: Option<SequenceSpec>) -> Self {
        debug_assert!(dims > 0 && !coords.is_empty() && coords.len().is_multiple_of(dims));
        PointSet { dims, coords, spec }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn spec(&self) -> Option<&SequenceSpec> {
        self.spec.as_ref()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dims..(i + 1) * self.dims]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dims)
    }

    /// Coordinate `j` of every point.
    pub fn axis(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.iter().map(move |p| p[j])
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn first_primes(count: usize) -> Vec<u32> {
    (2..).filter(|&n| is_prime(n)).take(count).collect()
}

/// Digit reversal of `n` in base `base` about the radix point.
///
/// # Panics
///
/// Panics when `base < 2`.
pub fn radical_inverse(mut n: u64, base: u32) -> f64 {
    assert!(base >= 2, "radical inverse needs base >= 2");
    let b = u64::from(base);
    let inv_base = 1.0 / f64::from(base);
    let mut reversed = 0.0;
    let mut inv_base_n = 1.0;
    while n > 0 {
        let next = n / b;
        let digit = n - next * b;
        reversed = reversed * f64::from(base) + digit as f64;
        inv_base_n *= inv_base;
        n = next;
    }
    (reversed * inv_base_n).min(ONE_MINUS_EPSILON)
}

const ONE_MINUS_EPSILON: f64 = 1.0 - f64::EPSILON / 2.0;

/// Radical inverse with a fixed permutation applied to every digit position.
///
/// The expansion is truncated to the largest `K` with `base^K <= 2^53`, so the
/// scrambled value is an exact ratio `numerator / base^K`. Trailing zero
/// digits of `n` are permuted too, which is why truncation is needed at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitScramble {
    base: u32,
    perm: Vec<u32>,
    digits: u32,
}

impl DigitScramble {
    pub fn new(base: u32, perm: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidArgument(format!("base {base} < 2")));
        }
        let mut seen = vec![false; base as usize];
        if perm.len() != base as usize
            || perm.iter().any(|&d| d >= base || std::mem::replace(&mut seen[d as usize], true))
        {
            return Err(Error::InvalidArgument(format!("digit permutation {perm:?} is not a bijection on 0..{base}")));
        }
        let mut digits = 0;
        let mut scale: u64 = 1;
        while let Some(next) = scale.checked_mul(u64::from(base)).filter(|&s| s <= 1 << 53) {
            scale = next;
            digits += 1;
        }
        Ok(DigitScramble { base, perm, digits })
    }

    pub fn identity(base: u32) -> Self {
        Self::new(base, (0..base).collect()).expect("identity is a bijection")
    }

    pub fn random<R: Rng + ?Sized>(base: u32, rng: &mut R) -> Self {
        let mut perm: Vec<u32> = (0..base).collect();
        perm.shuffle(rng);
        Self::new(base, perm).expect("shuffle is a bijection")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Number of digits `K` kept in the expansion.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn denominator(&self) -> u64 {
        u64::from(self.base).pow(self.digits)
    }

    /// Scrambled value of `n` scaled by `base^K`, as an exact integer.
    pub fn numerator(&self, mut n: u64) -> u64 {
        let b = u64::from(self.base);
        let mut acc = 0u64;
        for _ in 0..self.digits {
            let digit = n % b;
            n /= b;
            acc = acc * b + u64::from(self.perm[digit as usize]);
        }
        acc
    }

    pub fn eval(&self, n: u64) -> f64 {
        self.numerator(n) as f64 / self.denominator() as f64
    }
}

/// Adds `shift` to every point coordinate-wise, modulo one.
pub fn random_shift(ps: &PointSet, shift: &Point) -> Result<PointSet> {
    if shift.dims() != ps.dims() {
        return Err(Error::DimensionMismatch { expected: ps.dims(), found: shift.dims() });
    }
    let s = shift.coords();
    let coords = ps.iter().flat_map(|p| p.iter().zip(s).map(|(&c, &t)| wrap_unit(c + t))).collect();
    Ok(PointSet::from_raw(ps.dims(), coords, ps.spec.clone()))
}

#[inline]
fn wrap_unit(x: f64) -> f64 {
    if x >= 1.0 {
        x - 1.0
    } else {
        x
    }
}

/// Smallest `m` with `m^dims == n`, if any.
pub fn exact_root(n: usize, dims: usize) -> Option<usize> {
    let guess = (n as f64).powf(1.0 / dims as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1).find(|&m| m >= 1 && m.checked_pow(dims as u32) == Some(n))
}

/// Largest `m` with `m^dims <= n`.
pub fn floor_root(n: usize, dims: usize) -> usize {
    let mut m = (n as f64).powf(1.0 / dims as f64).floor() as usize;
    while m.checked_pow(dims as u32).is_none_or(|p| p > n) {
        m -= 1;
    }
    while (m + 1).checked_pow(dims as u32).is_some_and(|p| p <= n) {
        m += 1;
    }
    m
}

/// Generates `n` points from `spec`.
pub fn generate(spec: &SequenceSpec, n: usize) -> Result<PointSet> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("point count must be positive".into()));
    }
    let d = spec.dims;
    let coords = match spec.kind {
        SequenceKind::IidUniform => {
            let mut rng = rng::stream(spec.seed);
            (0..n * d).map(|_| rng.random::<f64>()).collect()
        }
        SequenceKind::Halton => {
            let bases = spec.resolved_bases()?;
            (1..=n as u64).flat_map(|i| bases.iter().map(move |&b| radical_inverse(i, b))).collect()
        }
        SequenceKind::ScrambledShiftedHalton => {
            let bases = spec.resolved_bases()?;
            let mut rng = rng::stream(spec.seed);
            let scrambles: Vec<DigitScramble> = bases.iter().map(|&b| DigitScramble::random(b, &mut rng)).collect();
            let shift: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
            (1..=n as u64)
                .flat_map(|i| scrambles.iter().zip(&shift).map(move |(s, &t)| wrap_unit(s.eval(i) + t)))
                .collect()
        }
        SequenceKind::MidpointGrid => {
            let m = match spec.resolution {
                Some(m) if m.checked_pow(d as u32) == Some(n) => m,
                Some(_) => return Err(Error::GridSizeMismatch { n, dims: d }),
                None => exact_root(n, d).ok_or(Error::GridSizeMismatch { n, dims: d })?,
            };
            let axis: Vec<f64> = (1..=m).map(|j| (2 * j - 1) as f64 / (2 * m) as f64).collect();
            let mut coords = Vec::with_capacity(n * d);
            for flat in 0..n {
                let mut rem = flat;
                let mut p = vec![0.0; d];
                for slot in p.iter_mut().rev() {
                    *slot = axis[rem % m];
                    rem /= m;
                }
                coords.extend(p);
            }
            coords
        }
    };
    Ok(PointSet::from_raw(d, coords, Some(spec.clone())))
}
