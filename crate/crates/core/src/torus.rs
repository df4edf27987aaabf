//! SL(2,Z) word calculus for circular spherical divisors: evaluation of
//! words over {a, a⁻¹, b, b⁻¹}, rewriting (cancellation, cyclic
//! permutation, braid moves), the exact rotation number 𝔠_w, and the
//! tightness classifier for the torus bundles these divisors bound.
//!
//! Rotation values are exact: each letter turns a nonzero integer vector
//! by strictly less than a quarter turn, so the total angle is pinned by
//! a signed count of quarter-boundary crossings plus start/end vectors.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::graph::{circular_self_intersections, cycle_graph, is_circular_spherical};
use crate::moves::nonnegative_representative;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusError {
    #[error("a cyclic divisor needs at least two spheres")]
    TooShort,
    #[error("self-intersection {value} at position {index} gives a negative exponent")]
    ExponentNegative { index: usize, value: i64 },
    #[error("matrix does not have determinant 1")]
    NotUnimodular,
    #[error("rewrite step does not apply at the given site")]
    NotApplicable,
    #[error("not a circular spherical divisor")]
    NotCircular,
    #[error("bad word syntax: {0}")]
    BadWord(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    fn base(self) -> char {
        match self {
            Letter::A | Letter::AInv => 'a',
            Letter::B | Letter::BInv => 'b',
        }
    }

    fn sign(self) -> i64 {
        match self {
            Letter::A | Letter::B => 1,
            Letter::AInv | Letter::BInv => -1,
        }
    }

    pub fn matrix(self) -> SL2Matrix {
        let m = match self {
            Letter::A => [[1, 1], [0, 1]],
            Letter::AInv => [[1, -1], [0, 1]],
            Letter::B => [[1, 0], [-1, 1]],
            Letter::BInv => [[1, 0], [1, 1]],
        };
        SL2Matrix { m }
    }
}

/// A word in the free group on {a, b}; empty means the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotated_left(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let e = l.sign() * (j - i) as i64;
            if e == 1 {
                parts.push(l.base().to_string());
            } else {
                parts.push(format!("{}^{}", l.base(), e));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = TorusError;

    fn from_str(s: &str) -> Result<Self, TorusError> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<i64>()
                        .map_err(|_| TorusError::BadWord(tok.to_string()))?,
                ),
                None => (tok, 1),
            };
            let positive = match base {
                "a" => Letter::A,
                "b" => Letter::B,
                _ => return Err(TorusError::BadWord(tok.to_string())),
            };
            let l = if exp < 0 { positive.inverse() } else { positive };
            for _ in 0..exp.unsigned_abs() {
                letters.push(l);
            }
        }
        Ok(Word(letters))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SL2Matrix {
    pub m: [[i64; 2]; 2],
}

impl SL2Matrix {
    pub fn new(m: [[i64; 2]; 2]) -> Result<Self, TorusError> {
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1 {
            return Err(TorusError::NotUnimodular);
        }
        Ok(SL2Matrix { m })
    }

    pub fn identity() -> Self {
        SL2Matrix { m: [[1, 0], [0, 1]] }
    }

    pub fn mul(&self, o: &SL2Matrix) -> SL2Matrix {
        let a = &self.m;
        let b = &o.m;
        SL2Matrix {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn neg(&self) -> SL2Matrix {
        let a = &self.m;
        SL2Matrix {
            m: [[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]],
        }
    }

    pub fn inverse(&self) -> SL2Matrix {
        let a = &self.m;
        SL2Matrix {
            m: [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]],
        }
    }

    pub fn trace(&self) -> i64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        (
            self.m[0][0] * v.0 + self.m[0][1] * v.1,
            self.m[1][0] * v.0 + self.m[1][1] * v.1,
        )
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]
        )
    }
}

/// Left-to-right product of letter images; the empty word maps to I.
pub fn phi(w: &Word) -> SL2Matrix {
    w.0.iter()
        .fold(SL2Matrix::identity(), |acc, l| acc.mul(&l.matrix()))
}

/// `w(D) = b^{-2-s_1} a^{-1} … b^{-2-s_l} a^{-1}`.
pub fn word_of_divisor(s: &[i64]) -> Result<Word, TorusError> {
    if s.len() < 2 {
        return Err(TorusError::TooShort);
    }
    let mut letters = Vec::new();
    for (index, &si) in s.iter().enumerate() {
        let exp = 2 + si;
        if exp < 0 {
            return Err(TorusError::ExponentNegative { index, value: si });
        }
        for _ in 0..exp {
            letters.push(Letter::BInv);
        }
        letters.push(Letter::AInv);
    }
    Ok(Word(letters))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStep {
    /// remove an adjacent inverse pair starting at the index
    CancelPair(usize),
    /// rotate the word left by `k`
    CyclicPermute(usize),
    /// swap `b⁻¹a⁻¹b⁻¹ ↔ a⁻¹b⁻¹a⁻¹` (or the positive version) at the index
    Braid(usize),
}

pub fn rewrite(w: &Word, step: RewriteStep) -> Result<Word, TorusError> {
    match step {
        RewriteStep::CancelPair(i) => {
            if i + 1 < w.0.len() && w.0[i + 1] == w.0[i].inverse() {
                let mut v = w.0.clone();
                v.drain(i..=i + 1);
                Ok(Word(v))
            } else {
                Err(TorusError::NotApplicable)
            }
        }
        RewriteStep::CyclicPermute(k) => Ok(w.rotated_left(k)),
        RewriteStep::Braid(i) => {
            use Letter::*;
            if i + 3 > w.0.len() {
                return Err(TorusError::NotApplicable);
            }
            let replacement = match w.0[i..i + 3] {
                [BInv, AInv, BInv] => [AInv, BInv, AInv],
                [AInv, BInv, AInv] => [BInv, AInv, BInv],
                [B, A, B] => [A, B, A],
                [A, B, A] => [B, A, B],
                _ => return Err(TorusError::NotApplicable),
            };
            let mut v = w.0.clone();
            v[i..i + 3].copy_from_slice(&replacement);
            Ok(Word(v))
        }
    }
}

/// Exact total angle change `𝔠_w = K·π/2 + r(end) − r(start)` where `r`
/// is the within-quadrant residual in `[0, π/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationValue {
    pub quarter_crossings: i64,
    pub start: (i128, i128),
    pub end: (i128, i128),
    /// display only — every decision is made on the integer data
    pub float_value: f64,
}

/// Half-open counterclockwise quadrants: q covers `[qπ/2, (q+1)π/2)`.
fn quadrant(v: (i128, i128)) -> i64 {
    debug_assert!(v != (0, 0));
    if v.0 > 0 && v.1 >= 0 {
        0
    } else if v.1 > 0 && v.0 <= 0 {
        1
    } else if v.0 < 0 && v.1 <= 0 {
        2
    } else {
        3
    }
}

/// Rotate `v` counterclockwise by `times` quarter turns.
fn quarter_turns(v: (i128, i128), times: i64) -> (i128, i128) {
    let mut v = v;
    for _ in 0..times.rem_euclid(4) {
        v = (-v.1, v.0);
    }
    v
}

fn to_first_quadrant(v: (i128, i128)) -> (i128, i128) {
    let r = quarter_turns(v, 4 - quadrant(v));
    debug_assert_eq!(quadrant(r), 0);
    r
}

/// Residual comparison of two vectors, each taken mod quarter turns.
fn cmp_residual(u: (i128, i128), v: (i128, i128)) -> Ordering {
    let a = to_first_quadrant(u);
    let b = to_first_quadrant(v);
    // angle(a) > angle(b) within [0, π/2) iff b × a > 0
    (b.0 * a.1 - b.1 * a.0).cmp(&0)
}

impl RotationValue {
    /// Decide `𝔠_w` versus `m·π/2` exactly.
    pub fn compare_quarter(&self, m: i64) -> Ordering {
        // 𝔠 − mπ/2 = (K − m)π/2 + r(end) − r(start), residuals in [0, π/2)
        match self.quarter_crossings.cmp(&m) {
            Ordering::Greater => Ordering::Greater,
            Ordering::Less => Ordering::Less,
            Ordering::Equal => cmp_residual(self.end, self.start),
        }
    }

    pub fn at_least(&self, m: i64) -> bool {
        self.compare_quarter(m) != Ordering::Less
    }

    /// Total order on rotations measured from the same start vector.
    pub fn cmp_rotation(&self, other: &RotationValue) -> Ordering {
        debug_assert_eq!(self.start, other.start);
        self.quarter_crossings
            .cmp(&other.quarter_crossings)
            .then_with(|| cmp_residual(self.end, other.end))
    }
}

/// Apply the letters of `w` from last to first to `(1,0)ᵀ`, tracking
/// quarter-boundary crossings. Each letter turns by strictly less than
/// π/2 (the dot form `x² ± xy + y²` is positive definite), so at most one
/// boundary is crossed per step.
pub fn rotation(w: &Word) -> RotationValue {
    let start: (i128, i128) = (1, 0);
    let mut v = start;
    let mut q = quadrant(v);
    let mut k = 0i64;
    let mut float_value = 0f64;
    for letter in w.0.iter().rev() {
        let m = letter.matrix().m;
        let nv = (
            m[0][0] as i128 * v.0 + m[0][1] as i128 * v.1,
            m[1][0] as i128 * v.0 + m[1][1] as i128 * v.1,
        );
        let nq = quadrant(nv);
        k += match (nq - q).rem_euclid(4) {
            0 => 0,
            1 => 1,
            3 => -1,
            _ => unreachable!("a single letter cannot cross two quadrant boundaries"),
        };
        let cross = (v.0 * nv.1 - v.1 * nv.0) as f64;
        let dot = (v.0 * nv.0 + v.1 * nv.1) as f64;
        float_value += cross.atan2(dot);
        v = nv;
        q = nq;
    }
    RotationValue {
        quarter_crossings: k,
        start,
        end: v,
        float_value,
    }
}

/// The integer `n` with `nπ ≤ 𝔠_w < (n+1)π`.
pub fn twisting_floor(r: &RotationValue) -> i64 {
    let mut n = r.quarter_crossings.div_euclid(2);
    while !r.at_least(2 * n) {
        n -= 1;
    }
    while r.at_least(2 * (n + 1)) {
        n += 1;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundleType {
    Identity,
    MinusIdentity,
    Elliptic,
    Hyperbolic,
    /// trace 2, `A ≠ I`; `n` is the conjugacy invariant of `A`
    Parabolic(i64),
    /// trace −2, `A ≠ −I`; `n` is the conjugacy invariant of `−A`
    ParabolicMinus(i64),
}

/// Conjugacy invariant of a trace-2 matrix `A ≠ I`: with `v` a primitive
/// fixed vector and `(v, u)` a determinant-1 basis, `Au = u + n·v`.
fn parabolic_invariant(a: &SL2Matrix) -> i64 {
    let m = &a.m;
    let row = if (m[0][0] - 1, m[0][1]) != (0, 0) {
        (m[0][0] - 1, m[0][1])
    } else {
        (m[1][0], m[1][1] - 1)
    };
    let g = row.0.gcd(&row.1);
    let v = (-row.1 / g, row.0 / g);
    let eg = v.0.extended_gcd(&v.1);
    debug_assert_eq!(eg.gcd, 1);
    // eg.x·v0 + eg.y·v1 = 1, so u = (−eg.y, eg.x) has det(v, u) = 1
    let u = (-eg.y, eg.x);
    let au = a.apply(u);
    let d = (au.0 - u.0, au.1 - u.1);
    let n = if v.0 != 0 { d.0 / v.0 } else { d.1 / v.1 };
    debug_assert!(d.0 == n * v.0 && d.1 == n * v.1);
    n
}

pub fn bundle_type(a: &SL2Matrix) -> Result<BundleType, TorusError> {
    let m = &a.m;
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1 {
        return Err(TorusError::NotUnimodular);
    }
    let tr = a.trace();
    Ok(if tr.abs() > 2 {
        BundleType::Hyperbolic
    } else if tr.abs() < 2 {
        BundleType::Elliptic
    } else if tr == 2 {
        if *a == SL2Matrix::identity() {
            BundleType::Identity
        } else {
            BundleType::Parabolic(parabolic_invariant(a))
        }
    } else if *a == SL2Matrix::identity().neg() {
        BundleType::MinusIdentity
    } else {
        BundleType::ParabolicMinus(parabolic_invariant(&a.neg()))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tightness {
    UniversallyTight,
    Undetermined,
    NotApplicable,
}

/// Everything needed to re-derive the verdict by hand.
#[derive(Debug, Clone, Default)]
pub struct TightnessEvidence {
    pub representative: Option<Vec<i64>>,
    pub word: Option<Word>,
    pub monodromy: Option<SL2Matrix>,
    pub bundle: Option<BundleType>,
    /// classifications of A⁻¹ and −A, recorded because the orientation
    /// convention only pins the monodromy up to these variants
    pub inverse_bundle: Option<BundleType>,
    pub negated_bundle: Option<BundleType>,
    pub parabolic_invariant: Option<i64>,
    pub best_rotation: Option<RotationValue>,
    pub rotation_at_least_pi: Option<bool>,
    pub citation: Option<&'static str>,
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone)]
pub struct TightnessVerdict {
    pub outcome: Tightness,
    pub evidence: TightnessEvidence,
}

/// Classify the contact torus bundle bounded by the cyclic spherical
/// divisor with self-intersections `s`.
pub fn classify_tightness(s: &[i64]) -> Result<TightnessVerdict, TorusError> {
    if s.len() < 2 {
        return Err(TorusError::NotCircular);
    }
    let g = cycle_graph(s).map_err(|_| TorusError::NotCircular)?;
    let mut ev = TightnessEvidence::default();

    let Some(rep) = nonnegative_representative(&g) else {
        ev.note = Some("no non-negative representative is reachable by blow-downs");
        return Ok(TightnessVerdict {
            outcome: Tightness::NotApplicable,
            evidence: ev,
        });
    };
    let order = is_circular_spherical(&rep).ok_or(TorusError::NotCircular)?;
    let rs = circular_self_intersections(&rep, &order);
    ev.representative = Some(rs.clone());

    let mut sorted = rs.clone();
    sorted.sort_unstable();
    if sorted == [-1, -1] || sorted == [-2, -1] {
        ev.citation = Some("follows from Proposition 4.1 of Golla-Lisca");
        return Ok(TightnessVerdict {
            outcome: Tightness::UniversallyTight,
            evidence: ev,
        });
    }

    let w = word_of_divisor(&rs)?;
    let a = phi(&w);
    let bt = bundle_type(&a)?;
    ev.word = Some(w.clone());
    ev.monodromy = Some(a);
    ev.bundle = Some(bt);
    ev.inverse_bundle = Some(bundle_type(&a.inverse())?);
    ev.negated_bundle = Some(bundle_type(&a.neg())?);

    if let BundleType::Parabolic(n) = bt {
        ev.parabolic_invariant = Some(n);
        if n > 0 {
            ev.note = Some(
                "parabolic monodromy with positive invariant is the excluded \
                 case; n = 1 additionally sits on an open boundary and is \
                 left undetermined",
            );
            return Ok(TightnessVerdict {
                outcome: Tightness::Undetermined,
                evidence: ev,
            });
        }
    }

    let mut best = rotation(&w);
    for k in 1..w.len() {
        let r = rotation(&w.rotated_left(k));
        if r.cmp_rotation(&best) == Ordering::Greater {
            best = r;
        }
    }
    let tight = best.at_least(2);
    ev.best_rotation = Some(best);
    ev.rotation_at_least_pi = Some(tight);
    Ok(TightnessVerdict {
        outcome: if tight {
            Tightness::UniversallyTight
        } else {
            Tightness::Undetermined
        },
        evidence: ev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn group_relations() {
        assert_eq!(phi(&word("b^-1 a^-1 b^-1")), phi(&word("a^-1 b^-1 a^-1")));
        let ab6: Word = word("a b a b a b a b a b a b");
        assert_eq!(phi(&ab6), SL2Matrix::identity());
        assert_eq!(
            phi(&word("b^-2 a^-1 b^-2 a^-1")),
            SL2Matrix::identity().neg()
        );
        assert_eq!(phi(&Word::default()), SL2Matrix::identity());
    }

    #[test]
    fn divisor_words() {
        assert_eq!(word_of_divisor(&[-2, -2]).unwrap(), word("a^-1 a^-1"));
        assert_eq!(
            word_of_divisor(&[1, 0]).unwrap(),
            word("b^-3 a^-1 b^-2 a^-1")
        );
        assert_eq!(
            word_of_divisor(&[-3, 0]),
            Err(TorusError::ExponentNegative {
                index: 0,
                value: -3
            })
        );
        assert_eq!(word_of_divisor(&[0]), Err(TorusError::TooShort));
    }

    #[test]
    fn word_text_round_trip() {
        for s in ["b^-3 a^-1 b^-2 a^-1", "a", "a^2 b^-1", ""] {
            let w: Word = s.parse().unwrap();
            assert_eq!(w.to_string(), s);
        }
        assert!("c^2".parse::<Word>().is_err());
        assert!("a^x".parse::<Word>().is_err());
    }

    #[test]
    fn rewrite_steps() {
        let w = word("a a^-1");
        assert_eq!(rewrite(&w, RewriteStep::CancelPair(0)).unwrap(), Word::default());
        assert_eq!(
            rewrite(&w, RewriteStep::CancelPair(1)),
            Err(TorusError::NotApplicable)
        );

        // a⁻¹ (b⁻¹)^{n+2} a⁻¹ (b⁻¹)² rotated to b⁻¹ a⁻¹ (b⁻¹)^{n+2} a⁻¹ b⁻¹
        let n = 3usize;
        let base = format!("a^-1 b^-{} a^-1 b^-2", n + 2);
        let w: Word = base.parse().unwrap();
        let target: Word = format!("b^-1 a^-1 b^-{} a^-1 b^-1", n + 2).parse().unwrap();
        let rotated = rewrite(&w, RewriteStep::CyclicPermute(w.len() - 1)).unwrap();
        assert_eq!(rotated, target);
        // conjugation leaves the trace alone
        assert_eq!(phi(&rotated).trace(), phi(&w).trace());

        let w = word("b^-1 b^-1 a^-1 b^-1");
        let braided = rewrite(&w, RewriteStep::Braid(1)).unwrap();
        assert_eq!(braided, word("b^-1 a^-1 b^-1 a^-1"));
        assert_eq!(phi(&braided), phi(&w));
        assert_eq!(
            rewrite(&w, RewriteStep::Braid(0)),
            Err(TorusError::NotApplicable)
        );
    }

    #[test]
    fn theorem_vector_displays() {
        // b⁻¹ a⁻ⁿ b⁻¹ sends (1,0)ᵀ to (1−n, 2−n)ᵀ
        for n in 2..=10i64 {
            let w: Word = format!("b^-1 a^-{} b^-1", n).parse().unwrap();
            assert_eq!(phi(&w).apply((1, 0)), (1 - n, 2 - n));
        }
        // b⁻¹ a⁻ˡ b⁻ᵐ a⁻¹ b⁻¹ sends (1,0)ᵀ to (−l, 1−l)ᵀ
        for l in 1..=5i64 {
            for m in 0..=5i64 {
                let mut s = format!("b^-1 a^-{}", l);
                if m > 0 {
                    s.push_str(&format!(" b^-{}", m));
                }
                s.push_str(" a^-1 b^-1");
                let w: Word = s.parse().unwrap();
                assert_eq!(phi(&w).apply((1, 0)), (-l, 1 - l));
            }
        }
    }

    #[test]
    fn rotation_examples() {
        let r = rotation(&Word::default());
        assert_eq!(r.quarter_crossings, 0);
        assert_eq!(r.compare_quarter(0), Ordering::Equal);
        assert_eq!(twisting_floor(&r), 0);

        // the parabolic family: 𝔠 = π exactly, ending at (−1,0)ᵀ
        for n in -2..=10i64 {
            let mut s = "b^-1 a^-1".to_string();
            if n + 2 > 0 {
                s.push_str(&format!(" b^-{}", n + 2));
            }
            s.push_str(" a^-1 b^-1");
            let w: Word = s.parse().unwrap();
            let r = rotation(&w);
            assert_eq!(r.end, (-1, 0), "n = {}", n);
            assert_eq!(r.compare_quarter(2), Ordering::Equal, "n = {}", n);
            assert_eq!(twisting_floor(&r), 1, "n = {}", n);
            assert!((r.float_value - std::f64::consts::PI).abs() < 1e-9);
        }

        // (b⁻¹a⁻¹b⁻¹)² evaluates to a rigid half turn
        let r = rotation(&word("b^-1 a^-1 b^-1 b^-1 a^-1 b^-1"));
        assert_eq!(r.end, (-1, 0));
        assert_eq!(r.compare_quarter(2), Ordering::Equal);
        assert_eq!(twisting_floor(&r), 1);
    }

    #[test]
    fn rotation_monotone_over_inverse_letters() {
        // cross(v, a⁻¹v) = y² and cross(v, b⁻¹v) = x²: never clockwise
        let w = word("b^-2 a^-3 b^-1 a^-1 b^-4");
        let mut v = (1i128, 0i128);
        for l in w.0.iter().rev() {
            let m = l.matrix().m;
            let nv = (
                m[0][0] as i128 * v.0 + m[0][1] as i128 * v.1,
                m[1][0] as i128 * v.0 + m[1][1] as i128 * v.1,
            );
            assert!(v.0 * nv.1 - v.1 * nv.0 >= 0);
            v = nv;
        }
    }

    #[test]
    fn bundle_types() {
        let p = SL2Matrix::new([[1, 5], [0, 1]]).unwrap();
        assert_eq!(bundle_type(&p).unwrap(), BundleType::Parabolic(5));
        let q = SL2Matrix::new([[1, 0], [-5, 1]]).unwrap();
        assert_eq!(bundle_type(&q).unwrap(), BundleType::Parabolic(5));
        assert_eq!(
            bundle_type(&SL2Matrix::identity().neg()).unwrap(),
            BundleType::MinusIdentity
        );
        assert_eq!(
            bundle_type(&SL2Matrix::identity()).unwrap(),
            BundleType::Identity
        );
        let j = SL2Matrix::new([[0, -1], [1, 0]]).unwrap();
        assert_eq!(bundle_type(&j).unwrap(), BundleType::Elliptic);
        let h = SL2Matrix::new([[2, 1], [1, 1]]).unwrap();
        assert_eq!(bundle_type(&h).unwrap(), BundleType::Hyperbolic);
        assert_eq!(
            SL2Matrix::new([[1, 1], [1, 1]]),
            Err(TorusError::NotUnimodular)
        );
    }

    #[test]
    fn classifier_examples() {
        // D = (n, 0): universally tight with 𝔠_w = π
        for n in -2..=10i64 {
            let v = classify_tightness(&[n, 0]).unwrap();
            assert_eq!(v.outcome, Tightness::UniversallyTight, "n = {}", n);
            if let Some(best) = v.evidence.best_rotation {
                assert!(best.at_least(2));
            }
        }
        let v = classify_tightness(&[-1, -2]).unwrap();
        assert_eq!(v.outcome, Tightness::UniversallyTight);
        assert!(v.evidence.citation.is_some());

        let v = classify_tightness(&[-3, -3]).unwrap();
        assert_eq!(v.outcome, Tightness::NotApplicable);

        assert!(matches!(
            classify_tightness(&[0]),
            Err(TorusError::NotCircular)
        ));
    }
}
