//! Number fields Q(θ), their elements, factoring over a field (Trager's
//! method), and splitting-field construction by iterated adjunction.

pub mod galois;

use crate::exact_arith::{factor_over_q, squarefree_part, Int, PolyQ, Rat};
use crate::{degree_cap, Error, Result};
use num::{Integer, One, Zero};
use std::fmt;
use std::sync::Arc;

/// A number field Q(θ) given by the monic integer minimal polynomial of θ.
///
/// Constructors rescale the generator (θ → D·θ) so that the stored minimal
/// polynomial always has integer coefficients.
#[derive(Clone)]
pub struct NumberField {
    min_poly: PolyQ,
    min_poly_int: Vec<Int>,
    degree: usize,
    disc: Int,
    splitting: Option<SplittingData>,
}

/// Extra data carried by fields built as splitting fields: the polynomial
/// that was split, coordinates of its roots, and the expression of θ as a
/// rational combination of those roots.
#[derive(Clone)]
pub struct SplittingData {
    pub base_poly: PolyQ,
    pub root_coords: Vec<Vec<Rat>>,
    pub theta_expr: Vec<Rat>,
}

impl NumberField {
    /// The field Q itself (θ = 0, minimal polynomial x).
    pub fn rationals() -> Arc<NumberField> {
        Arc::new(NumberField {
            min_poly: PolyQ::x(),
            min_poly_int: vec![Int::zero(), Int::one()],
            degree: 1,
            disc: Int::one(),
            splitting: None,
        })
    }

    /// Build Q(θ) from an irreducible polynomial (checked).
    pub fn new(min_poly: &PolyQ) -> Result<Arc<NumberField>> {
        if min_poly.is_zero() || min_poly.is_constant() {
            return Err(Error::Input("minimal polynomial must be non-constant".into()));
        }
        let m = min_poly.monic();
        let factors = factor_over_q(&m)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::Input(format!(
                "polynomial {} is not irreducible over Q",
                min_poly
            )));
        }
        Self::new_irreducible_unchecked(&m)
    }

    /// Build Q(θ) from a polynomial known to be irreducible.
    pub(crate) fn new_irreducible_unchecked(min_poly: &PolyQ) -> Result<Arc<NumberField>> {
        let m = min_poly.monic();
        let n = m.degree();
        let cap = degree_cap();
        if n > cap {
            return Err(Error::DegreeCap { needed: n, cap });
        }
        // rescale θ -> D·θ so coefficients become integers
        let mut den = Int::one();
        for c in m.coeffs() {
            den = den.lcm(c.denom());
        }
        let scaled = if den.is_one() {
            m
        } else {
            let mut coeffs = Vec::with_capacity(n + 1);
            for (j, c) in m.coeffs().iter().enumerate() {
                let mut s = Int::one();
                for _ in 0..(n - j) {
                    s *= &den;
                }
                coeffs.push(c * Rat::from_integer(s));
            }
            PolyQ::new(coeffs)
        };
        let min_poly_int: Vec<Int> = scaled.coeffs().iter().map(|c| c.numer().clone()).collect();
        let disc = if n == 1 {
            Int::one()
        } else {
            let d = scaled.discriminant();
            debug_assert!(d.denom().is_one());
            d.numer().clone()
        };
        Ok(Arc::new(NumberField {
            min_poly: scaled,
            min_poly_int,
            degree: n,
            disc,
            splitting: None,
        }))
    }

    /// Scale factor applied to the generator during integer normalization:
    /// θ_stored = scale · (root of the polynomial passed in).
    pub(crate) fn normalization_scale(original: &PolyQ) -> Int {
        let m = original.monic();
        let mut den = Int::one();
        for c in m.coeffs() {
            den = den.lcm(c.denom());
        }
        den
    }

    pub fn min_poly(&self) -> &PolyQ {
        &self.min_poly
    }

    pub fn min_poly_int(&self) -> &[Int] {
        &self.min_poly_int
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn disc(&self) -> &Int {
        &self.disc
    }

    pub fn splitting(&self) -> Option<&SplittingData> {
        self.splitting.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// Structural identity: same stored minimal polynomial.
    pub fn same(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.min_poly == other.min_poly
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Rat>) -> NFElement {
        assert_eq!(coords.len(), self.degree, "coordinate count must equal degree");
        NFElement {
            field: Arc::clone(self),
            coords,
        }
    }

    pub fn zero(self: &Arc<Self>) -> NFElement {
        self.element(vec![Rat::zero(); self.degree])
    }

    pub fn one(self: &Arc<Self>) -> NFElement {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> NFElement {
        let mut coords = vec![Rat::zero(); self.degree];
        coords[0] = r;
        self.element(coords)
    }

    pub fn theta(self: &Arc<Self>) -> NFElement {
        let mut coords = vec![Rat::zero(); self.degree];
        if self.degree > 1 {
            coords[1] = Rat::one();
        }
        self.element(coords)
    }

    fn reduce(self: &Arc<Self>, poly: PolyQ) -> NFElement {
        let r = poly.rem(&self.min_poly);
        let mut coords = vec![Rat::zero(); self.degree];
        for (i, c) in r.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        self.element(coords)
    }

    /// Power sums p_k = Tr(θ^k) via Newton's identities, k = 0..=max.
    pub fn power_sums(&self, max: usize) -> Vec<Rat> {
        let n = self.degree;
        let a = |i: usize| self.min_poly.coeff(i); // monic: a(n) = 1
        let mut p = Vec::with_capacity(max + 1);
        p.push(Rat::from_integer(Int::from(n as u64)));
        for k in 1..=max {
            let mut s = Rat::zero();
            for i in 1..k.min(n + 1) {
                s += a(n - i) * p[k - i].clone();
            }
            let pk = if k <= n {
                -Rat::from_integer(Int::from(k as u64)) * a(n - k) - s
            } else {
                -s
            };
            p.push(pk);
        }
        p
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(θ) with θ: {} = 0", self.min_poly)
    }
}

/// An element of a number field, stored as coordinates over the power basis
/// 1, θ, ..., θ^{n-1}.
#[derive(Clone)]
pub struct NFElement {
    field: Arc<NumberField>,
    coords: Vec<Rat>,
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coords == other.coords
    }
}
impl Eq for NFElement {}

impl NFElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn to_poly(&self) -> PolyQ {
        PolyQ::new(self.coords.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.field.same(&other.field));
        self.field.element(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.field.same(&other.field));
        self.field.element(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.field
            .element(self.coords.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.field.same(&other.field));
        self.field.reduce(self.to_poly().mul(&other.to_poly()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        self.field
            .element(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Invariant("inverse of zero".into()));
        }
        let (g, s, _) = self.to_poly().extended_gcd(self.field.min_poly());
        debug_assert!(g.is_one(), "minimal polynomial not coprime to element");
        Ok(self.field.reduce(s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Trace to Q.
    pub fn trace(&self) -> Rat {
        let sums = self.field.power_sums(self.field.degree().saturating_sub(1));
        self.coords
            .iter()
            .zip(&sums)
            .map(|(c, p)| c * p)
            .sum()
    }

    /// Matrix of multiplication by self over the power basis (row-major n×n:
    /// column j = coordinates of self·θ^j).
    pub fn mult_matrix(&self) -> Vec<Rat> {
        let n = self.field.degree();
        let mut cols: Vec<NFElement> = Vec::with_capacity(n);
        let theta = self.field.theta();
        let mut cur = self.clone();
        for j in 0..n {
            cols.push(cur.clone());
            if j + 1 < n {
                cur = cur.mul(&theta);
            }
        }
        let mut out = vec![Rat::zero(); n * n];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                out[i * n + j] = col.coords[i].clone();
            }
        }
        out
    }

    /// Minimal polynomial over Q (monic).
    pub fn minimal_polynomial(&self) -> PolyQ {
        let n = self.field.degree();
        // rows: coordinates of self^0..self^k; find first linear dependence
        let mut powers: Vec<Vec<Rat>> = Vec::new();
        let mut cur = self.field.one();
        for k in 0..=n {
            powers.push(cur.coords.clone());
            if k < n {
                cur = cur.mul(self);
            }
            if let Some(dep) = linear_dependence(&powers, n) {
                return PolyQ::new(dep).monic();
            }
        }
        unreachable!("element of degree-n field has minimal polynomial of degree <= n");
    }
}

/// If rows (each of length `width`) are linearly dependent, return coefficients
/// c with Σ c_i row_i = 0 and the last coefficient 1.
fn linear_dependence(rows: &[Vec<Rat>], width: usize) -> Option<Vec<Rat>> {
    let k = rows.len();
    if k == 0 {
        return None;
    }
    // solve c_0..c_{k-2} with Σ c_i row_i = -row_{k-1}
    let mut aug: Vec<Vec<Rat>> = (0..width)
        .map(|j| {
            let mut row: Vec<Rat> = (0..k - 1).map(|i| rows[i][j].clone()).collect();
            row.push(-rows[k - 1][j].clone());
            row
        })
        .collect();
    let cols = k - 1;
    let mut pivot_rows = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..width).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, pr);
        let pv = aug[r][c].clone();
        for j in c..=cols {
            aug[r][j] = &aug[r][j] / &pv;
        }
        for i in 0..width {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=cols {
                    let v = &aug[r][j] * &f;
                    aug[i][j] -= v;
                }
            }
        }
        pivot_rows.push((r, c));
        r += 1;
    }
    // consistent iff no row has 0 = nonzero
    for i in r..width {
        if !aug[i][cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); cols];
    for &(pr, pc) in &pivot_rows {
        sol[pc] = aug[pr][cols].clone();
    }
    sol.push(Rat::one());
    Some(sol)
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self
            .coords
            .iter()
            .map(crate::exact_arith::rat_str)
            .collect();
        write!(f, "[{}]", strs.join(", "))
    }
}

/// Polynomial with coefficients in a number field, lowest degree first.
#[derive(Clone)]
pub struct PolyNF {
    field: Arc<NumberField>,
    coeffs: Vec<NFElement>,
}

impl PartialEq for PolyNF {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coeffs == other.coeffs
    }
}
impl Eq for PolyNF {}

impl PolyNF {
    pub fn new(field: &Arc<NumberField>, mut coeffs: Vec<NFElement>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        PolyNF {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        PolyNF {
            field: Arc::clone(field),
            coeffs: Vec::new(),
        }
    }

    pub fn from_polyq(field: &Arc<NumberField>, f: &PolyQ) -> Self {
        PolyNF::new(
            field,
            f.coeffs().iter().map(|c| field.from_rat(c.clone())).collect(),
        )
    }

    /// Project to a rational polynomial; panics if a coefficient is irrational.
    pub fn to_polyq(&self) -> PolyQ {
        PolyQ::new(
            self.coeffs
                .iter()
                .map(|c| c.as_rational().expect("irrational coefficient"))
                .collect(),
        )
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> NFElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[NFElement] {
        &self.coeffs
    }

    pub fn lc(&self) -> NFElement {
        self.coeffs.last().cloned().expect("lc of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc() == self.field.one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyNF::new(
            &self.field,
            (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyNF::new(
            &self.field,
            (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyNF::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        PolyNF::new(&self.field, out)
    }

    pub fn scale(&self, s: &NFElement) -> Self {
        PolyNF::new(&self.field, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn monic(&self) -> Result<Self> {
        Ok(self.scale(&self.lc().inv()?))
    }

    pub fn divrem(&self, div: &Self) -> Result<(Self, Self)> {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.degree() < div.degree() {
            return Ok((PolyNF::zero(&self.field), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let dlc_inv = div.lc().inv()?;
        let qlen = rem.len() - dd;
        let mut q = vec![self.field.zero(); qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dd].mul(&dlc_inv);
            if c.is_zero() {
                continue;
            }
            q[i] = c.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(dc));
            }
        }
        Ok((PolyNF::new(&self.field, q), PolyNF::new(&self.field, rem)))
    }

    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b)?.1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PolyNF::zero(&self.field);
        }
        PolyNF::new(
            &self.field,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&Rat::from_integer(Int::from(i as u64 + 1))))
                .collect(),
        )
    }

    pub fn eval(&self, x: &NFElement) -> NFElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// f(x + shift) for shift in the field.
    pub fn compose_shift(&self, shift: &NFElement) -> Self {
        let lin = PolyNF::new(&self.field, vec![shift.clone(), self.field.one()]);
        let mut acc = PolyNF::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(&lin)
                .add(&PolyNF::new(&self.field, vec![c.clone()]));
        }
        acc
    }
}

impl fmt::Debug for PolyNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyNF{:?}", self.coeffs)
    }
}

/// Norm of a monic polynomial over K down to Q: Res_y(m(y), G(x, y)), where G
/// replaces θ in the coefficients of g by the variable y. Computed by
/// evaluation at x = 0, 1, ..., deg·n and interpolation.
fn norm_poly(g: &PolyNF) -> PolyQ {
    let field = g.field();
    let m = field.min_poly();
    let n = field.degree();
    let d = g.degree();
    let total = n * d;
    // coefficient i of g as a polynomial in y
    let coeff_polys: Vec<PolyQ> = g
        .coeffs()
        .iter()
        .map(|c| PolyQ::new(c.coords().to_vec()))
        .collect();
    let mut points = Vec::with_capacity(total + 1);
    let mut values = Vec::with_capacity(total + 1);
    for t in 0..=total as i64 {
        let tr = Rat::from_integer(Int::from(t));
        // A_t(y) = Σ_i c_i(y) t^i  (Horner in t)
        let mut a = PolyQ::zero();
        for cp in coeff_polys.iter().rev() {
            a = a.scale(&tr).add(cp);
        }
        points.push(tr);
        values.push(m.resultant(&a));
    }
    PolyQ::interpolate(&points, &values)
}

/// Factor a non-zero polynomial with coefficients in K into monic irreducible
/// factors with multiplicity (Trager's method), sorted deterministically by
/// construction order.
pub fn factor_over_field(f: &PolyNF) -> Result<Vec<(PolyNF, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    if field.is_rational() {
        let fq = f.to_polyq();
        return Ok(factor_over_q(&fq)?
            .into_iter()
            .map(|(g, m)| (PolyNF::from_polyq(field, &g), m))
            .collect());
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let monic = f.monic()?;
    let sq = {
        let g = monic.gcd(&monic.derivative())?;
        monic.divrem(&g)?.0.monic()?
    };
    let irreducibles = trager_squarefree(&sq)?;
    let mut out = Vec::new();
    let mut rest = monic;
    for irr in irreducibles {
        let mut mult = 0usize;
        loop {
            let (q, r) = rest.divrem(&irr)?;
            if r.is_zero() {
                mult += 1;
                rest = q;
            } else {
                break;
            }
        }
        debug_assert!(mult > 0);
        out.push((irr, mult));
    }
    debug_assert!(rest.is_constant());
    Ok(out)
}

fn trager_squarefree(f: &PolyNF) -> Result<Vec<PolyNF>> {
    let field = f.field();
    let theta = field.theta();
    if f.degree() == 1 {
        return Ok(vec![f.clone()]);
    }
    for s in shift_candidates() {
        let shift = theta.scale(&Rat::from_integer(Int::from(-s)));
        let g = f.compose_shift(&shift); // g(x) = f(x - sθ)
        let norm = norm_poly(&g);
        if norm.is_zero() || norm.gcd(&norm.derivative()).degree() > 0 {
            continue;
        }
        let mut out = Vec::new();
        for (ni, _) in factor_over_q(&norm)? {
            let lifted = PolyNF::from_polyq(field, &ni);
            let h = g.gcd(&lifted)?;
            if h.is_zero() || h.is_constant() {
                continue;
            }
            // shift back: factor of f is h(x + sθ)
            let back = h.compose_shift(&theta.scale(&Rat::from_integer(Int::from(s))));
            out.push(back.monic()?);
        }
        let total: usize = out.iter().map(|h| h.degree()).sum();
        if total != f.degree() {
            return Err(Error::Invariant("Trager factors do not cover degree".into()));
        }
        return Ok(out);
    }
    Err(Error::SearchExhausted("Trager shift search".into()))
}

fn shift_candidates() -> impl Iterator<Item = i64> {
    (0..40).map(|i| {
        if i % 2 == 0 {
            i / 2
        } else {
            -(i / 2) - 1
        }
    })
}

/// Splitting field of f: the smallest field containing all roots of the
/// squarefree part of f, together with those roots.
pub fn splitting_field(f: &PolyQ) -> Result<(Arc<NumberField>, Vec<NFElement>)> {
    let g = squarefree_part(f)?;
    if g.is_constant() {
        return Err(Error::Input("cannot split a constant polynomial".into()));
    }
    let mut field = NumberField::rationals();
    let mut roots: Vec<NFElement> = Vec::new();
    let mut theta_expr: Vec<Rat> = Vec::new();
    let mut pending: Vec<PolyNF> = vec![PolyNF::from_polyq(&field, &g)];

    loop {
        // factor all pending pieces; collect roots and remaining non-linear parts
        let mut nonlinear: Vec<PolyNF> = Vec::new();
        for h in pending.drain(..) {
            for (irr, _) in factor_over_field(&h)? {
                if irr.degree() == 1 {
                    let root = irr.coeff(0).neg();
                    if !roots.iter().any(|r| *r == root) {
                        roots.push(root);
                        theta_expr.push(Rat::zero());
                    }
                } else {
                    nonlinear.push(irr);
                }
            }
        }
        if nonlinear.is_empty() {
            break;
        }
        nonlinear.sort_by_key(|h| h.degree());
        let h = nonlinear[0].clone();
        let (new_field, embed_alpha, beta, scale) = adjoin_root(&field, &h)?;
        // map all state into the new field
        let embed = |e: &NFElement| -> NFElement {
            let mut acc = new_field.zero();
            for c in e.coords().iter().rev() {
                acc = acc.mul(&embed_alpha).add(&new_field.from_rat(c.clone()));
            }
            acc
        };
        roots = roots.iter().map(&embed).collect();
        pending = nonlinear
            .iter()
            .map(|p| {
                PolyNF::new(&new_field, p.coeffs().iter().map(&embed).collect())
            })
            .collect();
        // θ_new = scale·(β + c·θ_old); record the combination over the roots
        let c_used = scale.1;
        let scale_rat = Rat::from_integer(scale.0.clone());
        for e in theta_expr.iter_mut() {
            *e = &*e * &scale_rat * Rat::from_integer(Int::from(c_used));
        }
        if let Some(idx) = roots.iter().position(|r| *r == beta) {
            theta_expr[idx] += scale_rat;
        } else {
            roots.push(beta);
            theta_expr.push(scale_rat);
        }
        field = new_field;
    }

    // verify the roots exactly
    let lifted = PolyNF::from_polyq(&field, &g);
    for r in &roots {
        if !lifted.eval(r).is_zero() {
            return Err(Error::Invariant("claimed root does not vanish".into()));
        }
    }
    if roots.len() != g.degree() {
        return Err(Error::Invariant("missing roots after splitting".into()));
    }

    // re-wrap the field with splitting metadata
    let data = SplittingData {
        base_poly: g,
        root_coords: roots.iter().map(|r| r.coords().to_vec()).collect(),
        theta_expr,
    };
    let final_field = Arc::new(NumberField {
        splitting: Some(data),
        ..(*field).clone()
    });
    let roots = roots
        .into_iter()
        .map(|r| final_field.element(r.coords().to_vec()))
        .collect();
    Ok((final_field, roots))
}

/// Adjoin a root β of the irreducible polynomial h over K = Q(α). Returns the
/// new field Q(θ') with θ' = D·(β + c·α), the image of α, the image of β, and
/// the pair (D, c).
#[allow(clippy::type_complexity)]
fn adjoin_root(
    field: &Arc<NumberField>,
    h: &PolyNF,
) -> Result<(Arc<NumberField>, NFElement, NFElement, (Int, i64))> {
    let n = field.degree();
    let d = h.degree();
    let cap = degree_cap();
    if n * d > cap {
        return Err(Error::DegreeCap { needed: n * d, cap });
    }
    if field.is_rational() {
        let hq = h.to_polyq();
        let scale = NumberField::normalization_scale(&hq);
        let new_field = NumberField::new_irreducible_unchecked(&hq)?;
        // β = θ'/D, α = 0
        let beta = new_field.theta().scale(&Rat::new(Int::one(), scale.clone()));
        let zero = new_field.zero();
        return Ok((new_field, zero, beta, (scale, 0)));
    }
    let m = field.min_poly();
    let coeff_polys: Vec<PolyQ> = h
        .coeffs()
        .iter()
        .map(|c| PolyQ::new(c.coords().to_vec()))
        .collect();
    for c in 1..40i64 {
        for c in [c, -c] {
            // r(x) = Res_y(m(y), Σ_j h_j(y) (x - c y)^j), degree n·d
            let total = n * d;
            let mut points = Vec::with_capacity(total + 1);
            let mut values = Vec::with_capacity(total + 1);
            for t in 0..=total as i64 {
                let tr = Rat::from_integer(Int::from(t));
                // poly in y: Σ_j h_j(y)·(t - c·y)^j
                let lin = PolyQ::new(vec![tr.clone(), Rat::from_integer(Int::from(-c))]);
                let mut a = PolyQ::zero();
                for cp in coeff_polys.iter().rev() {
                    a = a.mul(&lin).add(cp);
                }
                points.push(tr);
                values.push(m.resultant(&a));
            }
            let r = PolyQ::interpolate(&points, &values).monic();
            if r.gcd(&r.derivative()).degree() > 0 {
                continue;
            }
            let scale = NumberField::normalization_scale(&r);
            let new_field = NumberField::new_irreducible_unchecked(&r)?;
            // γ = θ'/D is a root of r; recover α = the common root of m(y) and
            // Σ_j h_j(y)(γ - c·y)^j over the new field
            let gamma = new_field
                .theta()
                .scale(&Rat::new(Int::one(), scale.clone()));
            let m_new = PolyNF::from_polyq(&new_field, m);
            let lin = PolyNF::new(
                &new_field,
                vec![gamma.clone(), new_field.from_rat(Rat::from_integer(Int::from(-c)))],
            );
            let mut gp = PolyNF::zero(&new_field);
            for cp in coeff_polys.iter().rev() {
                gp = gp.mul(&lin).add(&PolyNF::from_polyq(&new_field, cp));
            }
            let common = m_new.gcd(&gp)?;
            if common.is_zero() || common.is_constant() || common.degree() != 1 {
                continue;
            }
            let alpha = common.coeff(0).neg();
            let beta = gamma.sub(&alpha.scale(&Rat::from_integer(Int::from(c))));
            return Ok((new_field, alpha, beta, (scale, c)));
        }
    }
    Err(Error::SearchExhausted("primitive element search".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat_from_i64;

    fn poly(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_i64(coeffs)
    }

    #[test]
    fn quadratic_field_arithmetic() {
        let k = NumberField::new(&poly(&[-5, 0, 1])).unwrap();
        let sqrt5 = k.theta();
        assert_eq!(sqrt5.mul(&sqrt5), k.from_rat(rat_from_i64(5)));
        let inv = sqrt5.inv().unwrap();
        assert_eq!(sqrt5.mul(&inv), k.one());
        // (1+√5)/2 has minimal polynomial x^2 - x - 1
        let phi = k
            .element(vec![Rat::new(1.into(), 2.into()), Rat::new(1.into(), 2.into())]);
        assert_eq!(phi.minimal_polynomial(), poly(&[-1, -1, 1]));
    }

    #[test]
    fn factor_x2_minus_5_over_its_field() {
        let k = NumberField::new(&poly(&[-5, 0, 1])).unwrap();
        let f = PolyNF::from_polyq(&k, &poly(&[-5, 0, 1]));
        let factors = factor_over_field(&f).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(g, m)| g.degree() == 1 && *m == 1));
    }

    #[test]
    fn x2_plus_1_stays_irreducible_over_real_field() {
        let k = NumberField::new(&poly(&[-5, 0, 1])).unwrap();
        let f = PolyNF::from_polyq(&k, &poly(&[1, 0, 1]));
        let factors = factor_over_field(&f).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.degree(), 2);
    }

    #[test]
    fn cube_root_2_partial_split() {
        let k = NumberField::new(&poly(&[-2, 0, 0, 1])).unwrap();
        let f = PolyNF::from_polyq(&k, &poly(&[-2, 0, 0, 1]));
        let factors = factor_over_field(&f).unwrap();
        let mut degs: Vec<usize> = factors.iter().map(|(g, _)| g.degree()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 2]);
    }

    #[test]
    fn splitting_field_of_quadratic() {
        let (k, roots) = splitting_field(&poly(&[-5, 0, 1])).unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], roots[1].neg());
    }

    #[test]
    fn splitting_field_of_linear() {
        let (k, roots) = splitting_field(&poly(&[-3, 1])).unwrap();
        assert!(k.is_rational());
        assert_eq!(roots[0].as_rational().unwrap(), rat_from_i64(3));
    }

    #[test]
    fn splitting_field_of_x3_minus_2() {
        let (k, roots) = splitting_field(&poly(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(k.degree(), 6);
        assert_eq!(roots.len(), 3);
        let f = PolyNF::from_polyq(&k, &poly(&[-2, 0, 0, 1]));
        for r in &roots {
            assert!(f.eval(r).is_zero());
        }
        // θ is the recorded combination of the roots
        let data = k.splitting().unwrap();
        let mut acc = k.zero();
        for (e, r) in data.theta_expr.iter().zip(&roots) {
            acc = acc.add(&r.scale(e));
        }
        assert_eq!(acc, k.theta());
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        use crate::exact_arith::MatQ;
        // oracle: Sylvester matrix determinant via elimination
        let f = poly(&[2, -3, 1, 4]);
        let g = poly(&[1, 0, -2, 0, 1]);
        let (m, n) = (f.degree(), g.degree());
        let size = m + n;
        let mut e = vec![Rat::zero(); size * size];
        for i in 0..n {
            for j in 0..=m {
                e[i * size + i + j] = f.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                e[(n + i) * size + i + j] = g.coeff(n - j);
            }
        }
        let mat = MatQ::new(size, size, e);
        // determinant via charpoly: det = (-1)^size * charpoly(0)
        let det = mat.charpoly().coeff(0)
            * if size % 2 == 1 { -Rat::one() } else { Rat::one() };
        assert_eq!(f.resultant(&g), det);
    }

    #[test]
    fn power_sums_match_roots() {
        // x^2 - x - 1: p1 = 1, p2 = 3 (golden ratio identities)
        let k = NumberField::new(&poly(&[-1, -1, 1])).unwrap();
        let sums = k.power_sums(3);
        assert_eq!(sums[0], rat_from_i64(2));
        assert_eq!(sums[1], rat_from_i64(1));
        assert_eq!(sums[2], rat_from_i64(3));
        assert_eq!(sums[3], rat_from_i64(4)); // L_3 = 4
    }
}
