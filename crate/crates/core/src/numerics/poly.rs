use std::ops::{Add, Mul, Neg, Sub};

use super::NumericsError;

/// Default number of grid intervals in the sign-change scan.
pub const SCAN_INTERVALS: usize = 1000;
/// Bisection stops once the bracket is this narrow.
pub const BISECTION_WIDTH: f64 = 1e-12;
/// A sign-preserving minimum of |p| this close to zero (relative to the
/// coefficient scale) is reported as a near-double root.
pub const NEAR_DOUBLE_TOL: f64 = 1e-10;

/// Real polynomial, `coeffs[k]` multiplies `x^k`. Trailing zeros are
/// trimmed on construction, so the last stored coefficient is nonzero
/// (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c0 + c1·x`
    pub fn linear(c0: f64, c1: f64) -> Self {
        Polynomial::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    /// Σ|c_k|·|x|^k, the natural scale of rounding error in `eval(x)`.
    pub fn abs_eval(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Rescaled so the leading coefficient is +1.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(1.0 / self.leading())
    }

    /// Sign-flipped if needed so the leading coefficient is positive.
    pub fn with_positive_leading(&self) -> Polynomial {
        if self.leading() < 0.0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&0.0) + rhs.coeffs.get(k).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&0.0) - rhs.coeffs.get(k).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

/// Horner evaluation of `p` at `x`.
pub fn poly_eval(p: &Polynomial, x: f64) -> f64 {
    p.eval(x)
}

/// Real roots found inside a bracket.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RealRoots {
    /// Sign-changing roots, ascending and polished.
    pub roots: Vec<f64>,
    /// Locations where |p| dips to (numerically) zero without changing
    /// sign. Not included in `roots`.
    pub near_double: Vec<f64>,
}

/// All sign-changing real roots of `p` in `(lo, hi)` using the default scan
/// resolution.
pub fn poly_real_roots(p: &Polynomial, lo: f64, hi: f64) -> Result<RealRoots, NumericsError> {
    scan_polynomial(p, lo, hi, SCAN_INTERVALS)
}

/// Like [`poly_real_roots`], but when fewer than `expected` roots turn up
/// the scan is retried once with a 10x finer grid and then once more with
/// the upper bound doubled. A remaining shortfall is returned as
/// [`NumericsError::RootShortfall`] carrying whatever was found.
pub fn poly_real_roots_expecting(
    p: &Polynomial,
    lo: f64,
    hi: f64,
    expected: usize,
) -> Result<RealRoots, NumericsError> {
    let first = scan_polynomial(p, lo, hi, SCAN_INTERVALS)?;
    if first.roots.len() >= expected {
        return Ok(first);
    }
    let finer = scan_polynomial(p, lo, hi, 10 * SCAN_INTERVALS)?;
    if finer.roots.len() >= expected {
        return Ok(finer);
    }
    let wider = scan_polynomial(p, lo, 2.0 * hi, 10 * SCAN_INTERVALS)?;
    if wider.roots.len() >= expected {
        return Ok(wider);
    }
    Err(NumericsError::RootShortfall {
        expected,
        found: wider.roots,
    })
}

fn scan_polynomial(
    p: &Polynomial,
    lo: f64,
    hi: f64,
    intervals: usize,
) -> Result<RealRoots, NumericsError> {
    if p.degree() == 0 {
        return Err(NumericsError::ConstantPolynomial);
    }
    check_bracket(lo, hi)?;
    for end in [lo, hi] {
        if p.eval(end) == 0.0 {
            return Err(NumericsError::RootAtEndpoint { x: end });
        }
    }

    let grid = uniform_grid(lo, hi, intervals);
    let vals: Vec<f64> = grid.iter().map(|&x| p.eval(x)).collect();
    let mut out = RealRoots::default();
    for i in 0..intervals {
        let (a, b) = (grid[i], grid[i + 1]);
        let (fa, fb) = (vals[i], vals[i + 1]);
        if fb == 0.0 && i + 1 < intervals {
            out.roots.push(b);
            continue;
        }
        if fa.signum() != fb.signum() && fa != 0.0 {
            let (ra, rb) = bisect(|x| p.eval(x), a, b, fa, BISECTION_WIDTH);
            out.roots.push(newton_polish(p, ra, rb));
        }
    }

    let scale = p.max_abs_coeff();
    let deg = p.degree() as i32;
    for i in 1..intervals {
        let (l, m, r) = (vals[i - 1], vals[i], vals[i + 1]);
        let same_sign = l.signum() == m.signum() && m.signum() == r.signum() && m != 0.0;
        if same_sign && m.abs() <= l.abs() && m.abs() < r.abs() {
            let xmin = golden_min(|x| p.eval(x).abs(), grid[i - 1], grid[i + 1]);
            let bound = NEAR_DOUBLE_TOL * scale * xmin.abs().max(1.0).powi(deg);
            if p.eval(xmin).abs() <= bound {
                out.near_double.push(xmin);
            }
        }
    }
    Ok(out)
}

fn check_bracket(lo: f64, hi: f64) -> Result<(), NumericsError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(NumericsError::InvalidBracket { lo, hi });
    }
    Ok(())
}

fn uniform_grid(lo: f64, hi: f64, intervals: usize) -> Vec<f64> {
    let step = (hi - lo) / intervals as f64;
    (0..=intervals)
        .map(|i| if i == intervals { hi } else { lo + step * i as f64 })
        .collect()
}

/// Bisects a sign change of `f` on `[a, b]` (with `f(a) = fa`) down to the
/// given width, returning the final bracket.
fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, width: f64) -> (f64, f64) {
    while b - a > width {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    (a, b)
}

/// Newton steps from the bracket midpoint; a step is kept only if it stays
/// inside the bracket and does not increase |p|.
fn newton_polish(p: &Polynomial, a: f64, b: f64) -> f64 {
    let mut x = 0.5 * (a + b);
    let mut fx = p.eval(x).abs();
    for _ in 0..8 {
        let (v, dv) = p.eval_with_derivative(x);
        if v == 0.0 || dv == 0.0 {
            break;
        }
        let next = x - v / dv;
        if !(a..=b).contains(&next) {
            break;
        }
        let fnext = p.eval(next).abs();
        if fnext > fx {
            break;
        }
        let done = next == x;
        x = next;
        fx = fnext;
        if done {
            break;
        }
    }
    x
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Sign-change roots of an arbitrary continuous function on `(lo, hi)`,
/// located by a uniform scan of `intervals` cells and bisection to `width`.
/// No derivative is used; each root is the midpoint of its final bracket.
pub fn sign_change_roots(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    intervals: usize,
    width: f64,
) -> Result<Vec<f64>, NumericsError> {
    check_bracket(lo, hi)?;
    let grid = uniform_grid(lo, hi, intervals);
    let vals: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..intervals {
        let (fa, fb) = (vals[i], vals[i + 1]);
        if fb == 0.0 && i + 1 < intervals {
            roots.push(grid[i + 1]);
        } else if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
            let (a, b) = bisect(&f, grid[i], grid[i + 1], fa, width);
            roots.push(0.5 * (a + b));
        }
    }
    Ok(roots)
}

/// Determinant of the symmetric tridiagonal matrix whose diagonal entries
/// are the polynomials `diag` and whose squared off-diagonal entries are
/// `offdiag_sq` (only squares enter the determinant). Uses the three-term
/// recurrence `D_k = a_k·D_{k-1} − b_{k-1}²·D_{k-2}`.
pub fn tridiag_det_poly(diag: &[Polynomial], offdiag_sq: &[Polynomial]) -> Polynomial {
    assert!(
        diag.is_empty() || offdiag_sq.len() + 1 == diag.len(),
        "need exactly one off-diagonal entry fewer than diagonal entries"
    );
    let mut prev = Polynomial::constant(1.0);
    let mut cur = match diag.first() {
        Some(a) => a.clone(),
        None => return prev,
    };
    for (a, b2) in diag[1..].iter().zip(offdiag_sq) {
        let next = &(a * &cur) - &(b2 * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// [`tridiag_det_poly`] with real off-diagonal entries.
pub fn tridiag_det_poly_real(diag: &[Polynomial], offdiag: &[f64]) -> Polynomial {
    let sq: Vec<Polynomial> = offdiag.iter().map(|b| Polynomial::constant(b * b)).collect();
    tridiag_det_poly(diag, &sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        assert_eq!(poly_eval(&p, 2.0), 3.0);
        let wt = 0.5f64;
        let n1 = Polynomial::linear(wt * wt - 1.0, 4.0);
        assert_eq!(poly_eval(&n1, 3.0 / 16.0), 0.0);
        let c = Polynomial::constant(-2.5);
        for x in [-1e9, 0.0, 3.7] {
            assert_eq!(poly_eval(&c, x), -2.5);
        }
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.leading(), 2.0);
        assert!(Polynomial::new(vec![0.0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = Polynomial::linear(1.0, 1.0);
        let b = Polynomial::linear(-1.0, 1.0);
        assert_eq!((&a * &b).coeffs(), &[-1.0, 0.0, 1.0]);
        assert_eq!((&a - &a).coeffs(), &[] as &[f64]);
        assert_eq!((&a + &b).coeffs(), &[0.0, 2.0]);
        assert_eq!(Polynomial::new(vec![1.0, 3.0, 2.0]).derivative().coeffs(), &[3.0, 4.0]);
        let (v, dv) = Polynomial::new(vec![1.0, 3.0, 2.0]).eval_with_derivative(2.0);
        assert_eq!((v, dv), (15.0, 11.0));
    }

    #[test]
    fn roots_of_x2_minus_1() {
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        let r = poly_real_roots(&p, -2.0, 2.0).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(close(r.roots[0], -1.0, 1e-14));
        assert!(close(r.roots[1], 1.0, 1e-14));
    }

    #[test]
    fn roots_of_n2_resonance_polynomial() {
        let p = Polynomial::new(vec![45.0 / 16.0, -29.0, 32.0]);
        let disc = 481f64.sqrt();
        let want = [(29.0 - disc) / 64.0, (29.0 + disc) / 64.0];
        let r = poly_real_roots(&p, 0.0, 2.0).unwrap();
        assert_eq!(r.roots.len(), 2);
        for (got, w) in r.roots.iter().zip(want) {
            assert!(close(*got, w, 1e-14), "{got} vs {w}");
        }
        assert!(close(r.roots[0], 0.1104420, 1e-7));
        assert!(close(r.roots[1], 0.7958080, 1e-7));
    }

    #[test]
    fn root_of_n1_condition() {
        let p = Polynomial::linear(-0.75, 4.0);
        let r = poly_real_roots(&p, 0.0, 1.0).unwrap();
        assert_eq!(r.roots, vec![3.0 / 16.0]);
    }

    #[test]
    fn endpoint_root_and_constant_rejected() {
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        assert!(matches!(
            poly_real_roots(&p, 1.0, 3.0),
            Err(NumericsError::RootAtEndpoint { .. })
        ));
        assert!(matches!(
            poly_real_roots(&Polynomial::constant(2.0), 0.0, 1.0),
            Err(NumericsError::ConstantPolynomial)
        ));
        assert!(matches!(
            poly_real_roots(&p, 2.0, -2.0),
            Err(NumericsError::InvalidBracket { .. })
        ));
    }

    #[test]
    fn double_root_flagged() {
        // (x - 0.3137)^2 (x + 5): touches zero off-grid without a sign change
        let q = Polynomial::linear(-0.3137, 1.0);
        let p = &(&q * &q) * &Polynomial::linear(5.0, 1.0);
        let r = poly_real_roots(&p, 0.0, 1.0).unwrap();
        assert!(r.roots.is_empty());
        assert_eq!(r.near_double.len(), 1);
        assert!(close(r.near_double[0], 0.3137, 1e-4));
    }

    #[test]
    fn shortfall_reported_after_retries() {
        // one root in (0, 1), a second at 1.5 inside the doubled bracket,
        // a third at 5 out of reach
        let p = &(&Polynomial::linear(-0.5, 1.0) * &Polynomial::linear(-1.5, 1.0))
            * &Polynomial::linear(-5.0, 1.0);
        let two = poly_real_roots_expecting(&p, 0.0, 1.0, 2).unwrap();
        assert_eq!(two.roots.len(), 2);
        match poly_real_roots_expecting(&p, 0.0, 1.0, 3) {
            Err(NumericsError::RootShortfall { expected, found }) => {
                assert_eq!(expected, 3);
                assert_eq!(found.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tridiag_small_cases() {
        let p = Polynomial::linear(0.25 - 1.0, 4.0);
        assert_eq!(tridiag_det_poly(&[p.clone()], &[]), p);
        let q = Polynomial::new(vec![2.0, -1.0, 3.0]);
        let b = 1.5;
        let det = tridiag_det_poly_real(&[p.clone(), q.clone()], &[b]);
        let want = &(&p * &q) - &Polynomial::constant(b * b);
        assert_eq!(det, want);
    }

    #[test]
    fn generic_sign_change_roots() {
        let roots = sign_change_roots(|x| x.sin(), 1.0, 10.0, 200, 1e-13).unwrap();
        let want = [std::f64::consts::PI, 2.0 * std::f64::consts::PI, 3.0 * std::f64::consts::PI];
        assert_eq!(roots.len(), 3);
        for (r, w) in roots.iter().zip(want) {
            assert!(close(*r, w, 1e-12));
        }
    }
}
