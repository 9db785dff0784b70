//! The cubic Perron family with arbitrarily small angle `η`, and its
//! bi-Perron lift through `α + 1/α = γ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{
    factor_containing, is_irreducible, roots, ApproxRoot, ConjugateSet, IntPolynomial,
};
use crate::classify::{self, analyze, PerronAnalysis};
use crate::{Error, Result, DEFAULT_TOL};

/// A positive rational number `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: i128,
    den: i128,
}

impl Epsilon {
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::MalformedInput("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Epsilon { num, den })
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i128>()
                .map_err(|_| Error::MalformedInput(format!("bad rational {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Epsilon::new(parse(p)?, parse(q)?),
            None => Epsilon::new(parse(s)?, 1),
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One member of the cubic family `(c − x)[(a − x)² + b²] + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicFamily {
    pub epsilon: Epsilon,
    pub a0: i128,
    pub b0: i128,
    pub c0: i128,
    pub k: i128,
    pub a: i128,
    pub b: i128,
    pub c: i128,
    /// Monic form `(x − c)[(x − a)² + b²] − 1`.
    pub f: IntPolynomial,
    pub conjugates: ConjugateSet,
    pub omega1: ApproxRoot,
    /// The conjugate with positive imaginary part.
    pub omega2: ApproxRoot,
    pub eta: f64,
    /// `y³·f(y + 1/y)` made monic, when it fits in 128-bit coefficients.
    pub biperron_poly: Option<IntPolynomial>,
}

fn big(x: i128) -> BigInt {
    BigInt::from(x)
}

fn checked(x: BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow("family parameter"))
}

/// Generates the family member for `ε` with `b₀ = 1` and every other
/// parameter chosen minimal.
pub fn generate_cubic(epsilon: Epsilon) -> Result<CubicFamily> {
    let (p, q) = (big(epsilon.num), big(epsilon.den));
    if !(p.is_positive() && p < q) {
        return Err(Error::EpsilonOutOfRange(epsilon.to_string()));
    }
    let b0 = BigInt::from(1);
    // a₀² + 1 < (a₀ + ε)²  ⇔  q² < 2a₀pq + p²
    let mut a0: BigInt = (&q * &q - &p * &p) / (BigInt::from(2) * &p * &q);
    a0 = a0.max(BigInt::from(1));
    while &q * &q >= BigInt::from(2) * &a0 * &p * &q + &p * &p {
        a0 += 1;
    }
    let c0 = &a0 * &a0;
    let norm0 = &a0 * &a0 + &b0 * &b0;

    // k(a₀ + ε) − (c₀ + 4) ≥ k·√(a₀² + 1), scaled by q
    let gap_ok = |k: &BigInt| {
        let lhs = k * (&a0 * &q + &p) - (&c0 + BigInt::from(4)) * &q;
        !lhs.is_negative() && &lhs * &lhs >= k * k * &q * &q * &norm0
    };
    let a0f = a0.to_f64().unwrap_or(f64::MAX);
    let slope = a0f + epsilon.to_f64() - norm0.to_f64().unwrap_or(f64::MAX).sqrt();
    let estimate = (c0.to_f64().unwrap_or(f64::MAX) + 4.0) / slope;
    let mut k = BigInt::from(estimate.max(1.0) as u128);
    while k > BigInt::from(1) && gap_ok(&(&k - 1)) {
        k -= 1;
    }
    while !gap_ok(&k) {
        k += 1;
    }
    // b = k > 1/ε and b, c > 2
    while &k * &p <= q || k <= BigInt::from(2) {
        k += 1;
    }
    let c = (&k * (&a0 * &q + &p)).div_floor(&q);
    if &c * &c <= &k * &k * &norm0 {
        return Err(Error::ClaimViolated {
            claim: "Claim 1".into(),
            detail: format!("c = {c} does not exceed k·√(a₀² + b₀²)"),
        });
    }
    let a = &k * &a0;
    let b = &k * &b0;
    let mut fam = from_params(epsilon, checked(a)?, checked(b)?, checked(c)?)?;
    fam.a0 = checked(a0)?;
    fam.b0 = 1;
    fam.c0 = checked(c0)?;
    fam.k = checked(k)?;
    Ok(fam)
}

/// Builds a family member from explicit `(a, b, c)` without checking the
/// Claim-1 inequalities; the seed parameters are recorded as `k = 1`.
pub fn from_params(epsilon: Epsilon, a: i128, b: i128, c: i128) -> Result<CubicFamily> {
    let f = family_cubic(a, b, c)?;
    let conjugates = roots(&f, DEFAULT_TOL)?;
    let omega1 = *conjugates
        .largest_real()
        .map(|i| &conjugates.roots[i])
        .ok_or_else(|| Error::HypothesisFailed("cubic has no real root".into()))?;
    let omega2 = *conjugates
        .roots
        .iter()
        .find(|r| !r.is_real && r.im() > 0.0)
        .ok_or_else(|| Error::HypothesisFailed("cubic is totally real".into()))?;
    let eta = classify::eta(&omega1, &omega2)?;
    let biperron_poly = match reciprocal_lift(&f) {
        Ok(p) => Some(p),
        Err(Error::Overflow(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(CubicFamily {
        epsilon,
        a0: a,
        b0: b,
        c0: c,
        k: 1,
        a,
        b,
        c,
        f,
        conjugates,
        omega1,
        omega2,
        eta,
        biperron_poly,
    })
}

/// `(x − c)[(x − a)² + b²] − 1`, ascending.
pub fn family_cubic(a: i128, b: i128, c: i128) -> Result<IntPolynomial> {
    let (a, b, c) = (big(a), big(b), big(c));
    let n = &a * &a + &b * &b;
    let coeffs = [
        -(&c * &n + BigInt::from(1)),
        BigInt::from(2) * &a * &c + &n,
        -(&c + BigInt::from(2) * &a),
        BigInt::from(1),
    ];
    IntPolynomial::new(coeffs.into_iter().map(checked).collect::<Result<_>>()?)
}

/// `y^d·g(y + 1/y)` for a monic `g` of degree `d`: the polynomial of every
/// `α` with `α + 1/α` a root of `g`.
pub fn reciprocal_lift(g: &IntPolynomial) -> Result<IntPolynomial> {
    let d = g.degree();
    let mut out = vec![BigInt::zero(); 2 * d + 1];
    // (y² + 1)^i, ascending
    let mut binom = vec![BigInt::from(1)];
    for (i, ci) in g.coeffs().iter().enumerate() {
        if i > 0 {
            let mut next = vec![BigInt::zero(); binom.len() + 2];
            for (j, v) in binom.iter().enumerate() {
                next[j] += v;
                next[j + 2] += v;
            }
            binom = next;
        }
        for (j, v) in binom.iter().enumerate() {
            out[j + d - i] += big(*ci) * v;
        }
    }
    let coeffs = out
        .into_iter()
        .map(|c| c.to_i128().ok_or(Error::Overflow("reciprocal lift")))
        .collect::<Result<Vec<_>>>()?;
    IntPolynomial::new(coeffs)
}

/// Outcome of one claim check.
#[derive(Clone, Debug, PartialEq)]
pub struct ClaimOutcome {
    pub claim: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimReport {
    pub outcomes: Vec<ClaimOutcome>,
    pub tan_eta: f64,
    pub tan_eta_limit: f64,
}

impl ClaimReport {
    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn first_failure(&self) -> Option<&ClaimOutcome> {
        self.outcomes.iter().find(|o| !o.holds)
    }
}

/// Relative tolerance applied on top of the certified radii.
const CLAIM_TOL: f64 = 1e-9;

fn slack(radius: f64, scale: f64) -> f64 {
    radius + CLAIM_TOL * scale.abs().max(1.0)
}

/// Checks Claims 1–7 and `tan η < 6ε`, failing with the first violated
/// claim.
pub fn verify_claims(fam: &CubicFamily) -> Result<ClaimReport> {
    let report = claim_report(fam);
    match report.first_failure() {
        Some(o) => Err(Error::ClaimViolated {
            claim: o.claim.to_string(),
            detail: o.detail.clone(),
        }),
        None => Ok(report),
    }
}

/// Evaluates every claim without stopping at the first failure.
pub fn claim_report(fam: &CubicFamily) -> ClaimReport {
    let (a, b, c) = (big(fam.a), big(fam.b), big(fam.c));
    let (p, q) = (big(fam.epsilon.num), big(fam.epsilon.den));
    let n = &a * &a + &b * &b;
    let mut outcomes = Vec::new();
    let mut push = |claim, holds, detail: String| {
        outcomes.push(ClaimOutcome {
            claim,
            holds,
            detail,
        })
    };

    // Claim 1, exact
    let c1 = c.is_positive()
        && &c * &c > n
        && &c * &q <= &a * &q + &p * &b
        && &a * &a <= &c * &b * &b
        && &b * &p > q
        && b > BigInt::from(2)
        && c > BigInt::from(2);
    push(
        "Claim 1",
        c1,
        format!("√(a²+b²) < c ≤ a+εb, (a/b)² ≤ c, b > 1/ε, b,c > 2 for (a,b,c) = ({a},{b},{c})"),
    );

    // Claim 2: sign changes of the original cubic (c − x)[(a − x)² + b²] + 1
    let orig = |x: &BigRational| -fam.f.eval_rational(x);
    let cr = BigRational::from_integer(c.clone());
    let delta = BigRational::new(&c + 1, &n - 1);
    let upper = &cr + &delta;
    let exact2 = orig(&cr).is_positive()
        && orig(&(&cr + BigRational::from_integer(1.into()))).is_negative()
        && orig(&upper).is_negative();
    let (w1, r1) = (fam.omega1.re(), fam.omega1.radius);
    let cf = fam.c as f64;
    let upper_f = cf + (cf + 1.0) / (n.to_f64().unwrap_or(f64::MAX) - 1.0);
    let numeric2 = w1 + slack(r1, cf) > cf
        && w1 - slack(r1, cf) < upper_f
        && w1 - slack(r1, cf) <= cf + 1.0;
    push(
        "Claim 2",
        exact2 && numeric2,
        format!("ω₁ = {w1} in ({cf}, {upper_f}), exact sign changes: {exact2}"),
    );

    // Claim 3: negative discriminant
    let disc = cubic_discriminant(fam.f.coeffs());
    let c3 = disc.is_negative() && fam.conjugates.real_count() == 1;
    push("Claim 3", c3, format!("discriminant sign {}", disc.signum()));

    let w2 = fam.omega2.value;
    let r2 = fam.omega2.radius;
    let m2 = w2.norm();
    push(
        "Claim 4",
        m2 + r2 < w1 - r1,
        format!("|ω₂| = {m2} < ω₁ = {w1}"),
    );

    let nf = n.to_f64().unwrap_or(f64::MAX);
    let m2sq = m2 * m2;
    push(
        "Claim 5",
        m2sq + slack(2.0 * m2 * r2, nf) >= nf - 1.0,
        format!("|ω₂|² = {m2sq} ≥ a²+b²−1 = {}", nf - 1.0),
    );

    let af = fam.a as f64;
    let bf = fam.b as f64;
    let gap = w1 - w2.re;
    let gap_r = r1 + r2;
    let im2 = w2.im * w2.im;
    let c6 = w2.re.abs() <= af + slack(r2, af)
        && gap + slack(gap_r, gap) > 0.0
        && gap - slack(gap_r, cf - af + 2.0) < cf - af + 2.0
        && im2 + slack(2.0 * w2.im.abs() * r2, bf * bf) >= bf * bf - 1.0;
    push(
        "Claim 6",
        c6,
        format!("Re ω₂ = {}, ω₁ − Re ω₂ = {gap}, Im² = {im2}", w2.re),
    );

    let ratio = gap / w2.im.abs();
    let ratio_r = (gap_r + ratio * r2) / (w2.im.abs() - r2).max(f64::MIN_POSITIVE);
    let eps = fam.epsilon.to_f64();
    let rhs7 = (eps + 2.0 / bf).powi(2) / (1.0 - 1.0 / (bf * bf));
    push(
        "Claim 7",
        ratio * ratio <= rhs7 + slack(2.0 * ratio * ratio_r, rhs7),
        format!("tan²η = {} ≤ {rhs7}", ratio * ratio),
    );

    let limit = 6.0 * eps;
    push(
        "tan η < 6ε",
        ratio - ratio_r < limit,
        format!("tan η = {ratio} < {limit}"),
    );

    ClaimReport {
        outcomes,
        tan_eta: ratio,
        tan_eta_limit: limit,
    }
}

/// Discriminant of a monic cubic `x³ + Bx² + Cx + D` in exact arithmetic.
fn cubic_discriminant(coeffs: &[i128]) -> BigInt {
    let (d, c, b) = (big(coeffs[0]), big(coeffs[1]), big(coeffs[2]));
    BigInt::from(18) * &b * &c * &d - BigInt::from(4) * &b * &b * &b * &d + &b * &b * &c * &c
        - BigInt::from(4) * &c * &c * &c
        - BigInt::from(27) * &d * &d
}

/// Whether `γ > 2` is Perron and every other conjugate has modulus at most
/// `γ − 2`.
pub fn check_observation(gamma_poly: &IntPolynomial) -> Result<bool> {
    let set = roots(gamma_poly, DEFAULT_TOL)?;
    if !classify::is_perron(&set)? {
        return Err(Error::NotPerron);
    }
    let gi = set
        .dominant_index
        .or_else(|| set.largest_real())
        .ok_or(Error::NotPerron)?;
    let g = set.roots[gi];
    let (g_lo, g_hi) = (g.re() - g.radius, g.re() + g.radius);
    if g_hi <= 2.0 {
        return Ok(false);
    }
    if g_lo <= 2.0 {
        if gamma_poly.eval_int(2) == Some(0) {
            return Ok(false);
        }
        return Err(Error::Indeterminate("γ too close to 2".into()));
    }
    for (j, z) in set.roots.iter().enumerate() {
        if j == gi {
            continue;
        }
        let (lo, hi) = z.modulus_bounds();
        if hi <= g_lo - 2.0 {
            continue;
        }
        if lo > g_hi - 2.0 {
            return Ok(false);
        }
        return Err(Error::Indeterminate(format!(
            "|{}| too close to γ − 2",
            z.value
        )));
    }
    Ok(true)
}

/// The bi-Perron number `α > 1` with `α + 1/α = γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPerronLift {
    /// `±y^d·g(y + 1/y)` before any factoring.
    pub lift: IntPolynomial,
    pub lift_irreducible: bool,
    /// Minimal polynomial of `α`.
    pub alpha_poly: IntPolynomial,
    pub analysis: PerronAnalysis,
    pub observation_holds: bool,
    /// `(index, η̂)` for the best conjugate `α′` with `|α′| > 1`.
    pub eta_hat: Option<(usize, f64)>,
}

/// Lifts the Perron root of `gamma_poly` without requiring the Observation
/// hypotheses.
pub fn lift(gamma_poly: &IntPolynomial) -> Result<BiPerronLift> {
    let set = roots(gamma_poly, DEFAULT_TOL)?;
    let gi = set.largest_real().ok_or(Error::NoDominantRealRoot)?;
    let gamma = set.roots[gi].re();
    if gamma <= 2.0 {
        return Err(Error::HypothesisFailed(format!("γ = {gamma} is not above 2")));
    }
    let observation_holds = match check_observation(gamma_poly) {
        Ok(v) => v,
        Err(Error::NotPerron) => false,
        Err(e) => return Err(e),
    };
    let lift = reciprocal_lift(gamma_poly)?;
    let lift_irreducible = is_irreducible(&lift)?;
    let alpha_poly = if lift_irreducible {
        lift.clone()
    } else {
        let alpha = (gamma + (gamma * gamma - 4.0).sqrt()) / 2.0;
        factor_containing(&lift, num_complex::Complex64::new(alpha, 0.0))?
    };
    let analysis = analyze(&alpha_poly, DEFAULT_TOL)?;
    let eta_hat = analysis
        .eta_list
        .iter()
        .filter(|(i, _)| analysis.conjugates.roots[*i].modulus_bounds().0 > 1.0)
        .copied()
        .min_by(|x, y| x.1.total_cmp(&y.1));
    Ok(BiPerronLift {
        lift,
        lift_irreducible,
        alpha_poly,
        analysis,
        observation_holds,
        eta_hat,
    })
}

/// Lifts a Perron `γ` satisfying the Observation hypotheses and checks
/// that `α` is bi-Perron.
pub fn to_biperron_from_poly(gamma_poly: &IntPolynomial) -> Result<BiPerronLift> {
    if !check_observation(gamma_poly)? {
        return Err(Error::HypothesisFailed(
            "γ > 2 and |γ′| ≤ γ − 2 do not both hold".into(),
        ));
    }
    let out = lift(gamma_poly)?;
    if !out.alpha_poly.is_unit() {
        return Err(Error::ClaimViolated {
            claim: "Observation".into(),
            detail: "α is not a unit".into(),
        });
    }
    match &out.analysis.is_biperron {
        Some(v) if v.is_biperron => Ok(out),
        _ => Err(Error::ClaimViolated {
            claim: "Observation".into(),
            detail: "α is not bi-Perron".into(),
        }),
    }
}

/// The bi-Perron lift of a family member, with the angle bound
/// `tan η̂ ≤ 16ε` checked.
pub fn to_biperron(fam: &CubicFamily) -> Result<BiPerronLift> {
    let (a, b, c) = (big(fam.a), big(fam.b), big(fam.c));
    let n = &a * &a + &b * &b;
    // c ≥ √(a² + b²) + 3
    let room = &c - BigInt::from(3);
    if room.is_negative() || &room * &room < n {
        return Err(Error::HypothesisFailed(format!(
            "c = {c} is below √(a² + b²) + 3"
        )));
    }
    if b <= BigInt::from(2)
        || c <= BigInt::from(2)
        || &b * big(fam.epsilon.num) <= big(fam.epsilon.den)
    {
        return Err(Error::HypothesisFailed("need b, c > 2 and b > 1/ε".into()));
    }
    let out = to_biperron_from_poly(&fam.f)?;
    let limit = 16.0 * fam.epsilon.to_f64();
    let (_, eta_hat) = out.eta_hat.ok_or_else(|| Error::ClaimViolated {
        claim: "bi-Perron angle".into(),
        detail: "no conjugate α′ with |α′| > 1 off the real axis".into(),
    })?;
    if eta_hat.tan() > limit * (1.0 + CLAIM_TOL) {
        return Err(Error::ClaimViolated {
            claim: "bi-Perron angle".into(),
            detail: format!("tan η̂ = {} exceeds 16ε = {limit}", eta_hat.tan()),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn eps(s: &str) -> Epsilon {
        s.parse().unwrap()
    }

    #[test]
    fn epsilon_parsing() {
        assert_eq!(eps("2/4"), Epsilon::new(1, 2).unwrap());
        assert_eq!(eps("1/-8").to_string(), "-1/8");
        assert!("x/2".parse::<Epsilon>().is_err());
        assert!("1/0".parse::<Epsilon>().is_err());
    }

    #[test]
    fn generated_parameters() {
        let f = generate_cubic(eps("1/2")).unwrap();
        assert_eq!((f.a0, f.b0, f.c0, f.k), (1, 1, 1, 59));
        assert_eq!((f.a, f.b, f.c), (59, 59, 88));
        assert_eq!(f.f.coeffs(), &[-612657, 17346, -206, 1]);
        let f = generate_cubic(eps("1/4")).unwrap();
        assert_eq!((f.a0, f.b0, f.c0, f.k), (2, 1, 4, 575));
        assert_eq!((f.a, f.b, f.c), (1150, 575, 1293));
        assert_eq!(generate_cubic(eps("2")), Err(Error::EpsilonOutOfRange("2/1".into())));
        assert!(matches!(generate_cubic(eps("0")), Err(Error::EpsilonOutOfRange(_))));
    }

    #[test]
    fn claims_hold_for_generated_members() {
        let f = generate_cubic(eps("1/2")).unwrap();
        let r = verify_claims(&f).unwrap();
        assert!((r.tan_eta - 0.491530832379).abs() < 1e-9);
        assert!(r.tan_eta < 3.0);
    }

    #[test]
    fn claim_one_violation() {
        // ⌈√(59² + 59²)⌉ − 1 = 83
        let f = from_params(eps("1/2"), 59, 59, 83).unwrap();
        match verify_claims(&f) {
            Err(Error::ClaimViolated { claim, .. }) => assert_eq!(claim, "Claim 1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lift_of_linear() {
        let p = reciprocal_lift(&parse_poly("-3,1").unwrap()).unwrap();
        assert_eq!(p.coeffs(), &[1, -3, 1]);
        let out = to_biperron_from_poly(&parse_poly("-3,1").unwrap()).unwrap();
        assert_eq!(out.alpha_poly.coeffs(), &[1, -3, 1]);
    }

    #[test]
    fn lift_of_family_cubic() {
        let f = generate_cubic(eps("1/2")).unwrap();
        assert_eq!(
            f.biperron_poly.as_ref().unwrap().coeffs(),
            &[1, -206, 17349, -613069, 17349, -206, 1]
        );
        let out = to_biperron(&f).unwrap();
        assert!(out.lift_irreducible);
        let (_, eta_hat) = out.eta_hat.unwrap();
        assert!((eta_hat - 0.456753011556).abs() < 1e-9);
    }

    #[test]
    fn counterexample_cubic() {
        let g = parse_poly("-126,65,-13,1").unwrap();
        assert!(!check_observation(&g).unwrap());
        assert!(matches!(to_biperron_from_poly(&g), Err(Error::HypothesisFailed(_))));
        let out = lift(&g).unwrap();
        assert_eq!(out.alpha_poly.coeffs(), &[1, -13, 68, -152, 68, -13, 1]);
        assert!(!out.analysis.is_biperron.unwrap().is_biperron);
    }

    #[test]
    fn observation_examples() {
        let f = generate_cubic(eps("1/2")).unwrap();
        assert!(check_observation(&f.f).unwrap());
        assert!(check_observation(&parse_poly("-3,1").unwrap()).unwrap());
        assert_eq!(check_observation(&parse_poly("-2,0,1").unwrap()), Err(Error::NotPerron));
    }
}
