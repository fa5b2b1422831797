//! Density machinery: the stabilizer union S₁ and centralizer set S₂ for a
//! polynomial over its splitting field, the extremal class function whose
//! zero set meets S₂ exactly, Chebotarev versus empirical densities, and the
//! brute-force wreath-product centralizer count.

use crate::class_function::ClassFunction;
use crate::exact_arith::{primes_up_to, rat_str, Int, PolyFp, PolyQ, Rat};
use crate::number_field::galois::GaloisGroup;
use crate::number_field::{splitting_field, NFElement, PolyNF};
use crate::{brute_force_budget, Error, Result};
use num::One;
use serde::Serialize;
use std::sync::Arc;

/// A finite group given by its multiplication table, with inverses and
/// centralizer data derivable on demand. Index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    order: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validate and wrap a multiplication table. Checks the group axioms:
    /// closure (by index range), identity at 0, inverses, associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Input("empty multiplication table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Input("malformed multiplication table".into()));
            }
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::Input("index 0 is not an identity".into()));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i][j] == 0 && table[j][i] == 0) {
                Some(j) => inverse[i] = j,
                None => return Err(Error::Input(format!("element {} has no inverse", i))),
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::Input("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            order: n,
            table,
            inverse,
        })
    }

    /// Built-in tables: cyclic C2, C3 and the symmetric group S3.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "C2" => Self::cyclic(2),
            "C3" => Self::cyclic(3),
            "S3" => {
                // permutations of {0,1,2} composed left-to-right
                let perms: [[usize; 3]; 6] = [
                    [0, 1, 2],
                    [1, 2, 0],
                    [2, 0, 1],
                    [0, 2, 1],
                    [2, 1, 0],
                    [1, 0, 2],
                ];
                let mut table = vec![vec![0usize; 6]; 6];
                for (i, p) in perms.iter().enumerate() {
                    for (j, q) in perms.iter().enumerate() {
                        let comp = [p[q[0]], p[q[1]], p[q[2]]];
                        table[i][j] = perms.iter().position(|r| *r == comp).unwrap();
                    }
                }
                Self::from_table(table)
            }
            other => Err(Error::Input(format!(
                "unknown group name {:?}; expected C2, C3, or S3",
                other
            ))),
        }
    }

    fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        Self::from_table(table)
    }

    /// The composition table of a Galois group.
    pub fn from_galois(g: &GaloisGroup) -> Result<Self> {
        let n = g.order();
        Self::from_table(
            (0..n)
                .map(|i| (0..n).map(|j| g.compose(i, j)).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Elements of the cyclic subgroup generated by σ.
    pub fn generated(&self, sigma: usize) -> Vec<usize> {
        let mut out = vec![0usize];
        let mut cur = sigma;
        while cur != 0 {
            out.push(cur);
            cur = self.mul(cur, sigma);
        }
        out
    }
}

/// Stabilizer of one root: {σ : σ(α) = α}.
fn stabilizer(group: &Arc<GaloisGroup>, root: &NFElement) -> Vec<usize> {
    (0..group.order())
        .filter(|&s| group.apply(s, root) == *root)
        .collect()
}

fn centralizer(group: &Arc<GaloisGroup>, s: usize) -> Vec<usize> {
    (0..group.order())
        .filter(|&w| group.compose(w, s) == group.compose(s, w))
        .collect()
}

/// S₁ = union of the root stabilizers: exactly the elements whose class
/// makes the polynomial have a root mod p.
pub fn s1_set(group: &Arc<GaloisGroup>, roots: &[NFElement]) -> Vec<usize> {
    let stabs: Vec<Vec<usize>> = roots.iter().map(|r| stabilizer(group, r)).collect();
    (0..group.order())
        .filter(|s| stabs.iter().any(|st| st.contains(s)))
        .collect()
}

/// S₂ = elements whose full centralizer lies inside some root stabilizer.
pub fn s2_set(group: &Arc<GaloisGroup>, roots: &[NFElement]) -> Vec<usize> {
    let stabs: Vec<Vec<usize>> = roots.iter().map(|r| stabilizer(group, r)).collect();
    (0..group.order())
        .filter(|&s| {
            let cent = centralizer(group, s);
            stabs
                .iter()
                .any(|st| cent.iter().all(|w| st.contains(w)))
        })
        .collect()
}

/// The class function whose composition with the polynomial vanishes exactly
/// on S₂: on each class whose representative has its centralizer inside some
/// stabilizer, take the corresponding root (least index wins); elsewhere 0.
pub fn extremal_class_function(
    group: &Arc<GaloisGroup>,
    roots: &[NFElement],
) -> Result<ClassFunction> {
    let stabs: Vec<Vec<usize>> = roots.iter().map(|r| stabilizer(group, r)).collect();
    let mut values = Vec::with_capacity(group.class_count());
    for cid in 0..group.class_count() {
        let rep = group.class_rep(cid);
        let cent = centralizer(group, rep);
        let chosen = stabs
            .iter()
            .position(|st| cent.iter().all(|w| st.contains(w)));
        values.push(match chosen {
            Some(i) => roots[i].clone(),
            None => group.field().zero(),
        });
    }
    ClassFunction::new(group, values)
}

/// Exact and empirical densities for the root and zero sets of a polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub s1_size: usize,
    pub s2_size: usize,
    pub group_order: usize,
    pub s1_density: String,
    pub s2_density: String,
    pub limit: u64,
    pub primes_checked: usize,
    pub empirical_root_density: String,
    pub empirical_zero_density: String,
    /// group element in S₁ but not S₂ (the identity, when f has no rational
    /// root)
    pub strict_gap_witness: Option<usize>,
}

/// Whether f has a root mod p, via gcd(x^p - x, f).
pub fn has_root_mod_p(f_int: &[Int], p: u64) -> Result<bool> {
    let fbar = PolyFp::from_int_coeffs(p, f_int)?;
    if fbar.is_zero() || fbar.is_constant() {
        return Ok(fbar.is_zero());
    }
    let xp = PolyFp::x_pow_p_mod(&fbar);
    let diff = xp.sub(&PolyFp::x(p));
    let g = fbar.gcd(&diff);
    Ok(!g.is_constant())
}

/// Full density analysis of a monic polynomial against the prime bound.
pub fn density_report(f: &PolyQ, limit: u64) -> Result<DensityReport> {
    if f.is_zero() || f.is_constant() {
        return Err(Error::Input("density analysis needs a non-constant polynomial".into()));
    }
    let (field, roots) = splitting_field(f)?;
    let group = GaloisGroup::new(&field)?;
    let s1 = s1_set(&group, &roots);
    let s2 = s2_set(&group, &roots);
    let g = extremal_class_function(&group, &roots)?;
    // compose f with g classwise
    let f_nf = PolyNF::from_polyq(&field, f);
    let fg_values: Vec<NFElement> = g.class_values().iter().map(|v| f_nf.eval(v)).collect();
    let fg = ClassFunction::new(&group, fg_values)?;

    let f_monic = f.monic();
    let f_int: Vec<Int> = {
        let mut den = Int::one();
        for c in f_monic.coeffs() {
            den = num::Integer::lcm(&den, c.denom());
        }
        f_monic
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect()
    };

    let mut checked = 0usize;
    let mut root_hits = 0usize;
    let mut zero_hits = 0usize;
    for p in primes_up_to(limit) {
        checked += 1;
        if has_root_mod_p(&f_int, p)? {
            root_hits += 1;
        }
        match fg.eval_at_frobenius(p) {
            Ok(v) => {
                if v == 0 {
                    zero_hits += 1;
                }
            }
            Err(Error::Ramified(_)) | Err(Error::BadPrime { .. }) => {}
            Err(e) => return Err(e),
        }
    }

    let frac = |num: usize, den: usize| {
        if den == 0 {
            "0".to_string()
        } else {
            rat_str(&Rat::new(Int::from(num as u64), Int::from(den as u64)))
        }
    };
    let witness = if s1.contains(&0) && !s2.contains(&0) {
        Some(0)
    } else {
        None
    };
    Ok(DensityReport {
        s1_size: s1.len(),
        s2_size: s2.len(),
        group_order: group.order(),
        s1_density: frac(s1.len(), group.order()),
        s2_density: frac(s2.len(), group.order()),
        limit,
        primes_checked: checked,
        empirical_root_density: frac(root_hits, checked),
        empirical_zero_density: frac(zero_hits, checked),
        strict_gap_witness: witness,
    })
}

/// One element (φ, σ) of the wreath product A^Γ ⋊ Γ with A = (Z/2)^r.
#[derive(Clone, PartialEq, Eq)]
struct WreathElem {
    phi: Vec<u8>,
    sigma: usize,
}

/// Result of the wreath-product centralizer enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct WreathReport {
    pub group_order: usize,
    pub fiber_order: u64,
    pub total: u64,
    pub satisfying: u64,
    pub failures: u64,
    /// lower bound (1 - |Γ|²/|A|)·|Γ'| as an exact rational
    pub lower_bound: String,
    pub failure_bound: String,
    pub pass: bool,
}

fn wreath_mul(g: &FiniteGroupTable, a: &WreathElem, b: &WreathElem) -> WreathElem {
    let n = g.order();
    let mut phi = Vec::with_capacity(n);
    for x in 0..n {
        // (ψ ∘ R_σ)(x) = ψ(x·σ)
        phi.push(a.phi[x] ^ b.phi[g.mul(x, a.sigma)]);
    }
    WreathElem {
        phi,
        sigma: g.mul(a.sigma, b.sigma),
    }
}

/// Commutation test through the difference criterion
/// φ − φ∘R_τ = ψ − ψ∘R_σ (with στ = τσ), instead of the table product.
pub fn wreath_commute_by_criterion(
    g: &FiniteGroupTable,
    a_phi: &[u8],
    a_sigma: usize,
    b_phi: &[u8],
    b_sigma: usize,
) -> bool {
    if g.mul(a_sigma, b_sigma) != g.mul(b_sigma, a_sigma) {
        return false;
    }
    (0..g.order()).all(|x| {
        a_phi[x] ^ a_phi[g.mul(x, b_sigma)] == b_phi[x] ^ b_phi[g.mul(x, a_sigma)]
    })
}

/// Enumerate Γ' = A^Γ ⋊ Γ with A = (Z/2)^r and count the elements ξ whose
/// centralizer projects into ⟨π(ξ)⟩. Verifies the quantitative bound: at
/// least (1 − |Γ|²/|A|)·|Γ'| elements satisfy the condition and at most
/// |Γ|²·|A|^{|Γ|−1} fail it.
pub fn wreath_check(g: &FiniteGroupTable, r: u32) -> Result<WreathReport> {
    let n = g.order();
    let a_card: u64 = 1u64 << r;
    let fiber: u64 = a_card
        .checked_pow(n as u32)
        .ok_or_else(|| Error::BudgetExceeded("wreath product fiber overflows".into()))?;
    let total = fiber
        .checked_mul(n as u64)
        .ok_or_else(|| Error::BudgetExceeded("wreath product size overflows".into()))?;
    let budget = brute_force_budget() as u64;
    if total > budget {
        return Err(Error::BudgetExceeded(format!(
            "wreath product of size {} exceeds the budget {}",
            total, budget
        )));
    }

    let decode = |code: u64| -> Vec<u8> {
        let mut phi = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            phi.push((c % a_card) as u8);
            c /= a_card;
        }
        phi
    };
    let mut elems = Vec::with_capacity(total as usize);
    for sigma in 0..n {
        for code in 0..fiber {
            elems.push(WreathElem {
                phi: decode(code),
                sigma,
            });
        }
    }

    let mut satisfying = 0u64;
    for xi in &elems {
        let gen = g.generated(xi.sigma);
        let mut ok = true;
        'eta: for eta in &elems {
            if gen.contains(&eta.sigma) {
                continue;
            }
            if wreath_mul(g, xi, eta) == wreath_mul(g, eta, xi) {
                ok = false;
                break 'eta;
            }
        }
        if ok {
            satisfying += 1;
        }
    }

    let total_rat = Rat::from_integer(Int::from(total));
    let lower = (Rat::one()
        - Rat::new(Int::from((n * n) as u64), Int::from(a_card)))
        * total_rat;
    let failure_bound =
        Int::from((n * n) as u64) * Int::from(a_card).pow((n - 1) as u32);
    let failures = total - satisfying;
    let pass = Rat::from_integer(Int::from(satisfying)) >= lower
        && Int::from(failures) <= failure_bound;
    Ok(WreathReport {
        group_order: n,
        fiber_order: fiber,
        total,
        satisfying,
        failures,
        lower_bound: rat_str(&lower),
        failure_bound: failure_bound.to_string(),
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

    #[test]
    fn s1_s2_for_cube_root_two() {
        let (field, roots) = splitting_field(&PolyQ::from_i64(&[-2, 0, 0, 1])).unwrap();
        let group = GaloisGroup::new(&field).unwrap();
        let s1 = s1_set(&group, &roots);
        let s2 = s2_set(&group, &roots);
        assert_eq!(s1.len(), 4);
        assert_eq!(s2.len(), 3);
        assert!(s2.iter().all(|s| s1.contains(s)));
        assert!(s1.contains(&0) && !s2.contains(&0));
    }

    #[test]
    fn s1_s2_for_gaussian_field() {
        let (field, roots) = splitting_field(&PolyQ::from_i64(&[1, 0, 1])).unwrap();
        let group = GaloisGroup::new(&field).unwrap();
        assert_eq!(s1_set(&group, &roots), vec![0]);
        assert!(s2_set(&group, &roots).is_empty());
    }

    #[test]
    fn extremal_zero_set_is_exactly_s2() {
        for coeffs in [vec![-2i64, 0, 0, 1], vec![1, 0, 1], vec![-3, 1]] {
            let f = PolyQ::from_i64(&coeffs);
            let (field, roots) = splitting_field(&f).unwrap();
            let group = GaloisGroup::new(&field).unwrap();
            let s2 = s2_set(&group, &roots);
            let g = extremal_class_function(&group, &roots).unwrap();
            let f_nf = PolyNF::from_polyq(&field, &f);
            let zero_set: Vec<usize> = (0..group.order())
                .filter(|&s| f_nf.eval(&g.value_at(s)).is_zero())
                .collect();
            assert_eq!(zero_set, s2, "polynomial {:?}", coeffs);
        }
    }

    #[test]
    fn random_class_functions_zero_inside_s2() {
        let f = PolyQ::from_i64(&[-2, 0, 0, 1]);
        let (field, roots) = splitting_field(&f).unwrap();
        let group = GaloisGroup::new(&field).unwrap();
        let s2 = s2_set(&group, &roots);
        let f_nf = PolyNF::from_polyq(&field, &f);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let g = crate::class_function::random_class_function(&group, &mut rng).unwrap();
            for s in 0..group.order() {
                if f_nf.eval(&g.value_at(s)).is_zero() {
                    assert!(s2.contains(&s));
                }
            }
        }
    }

    #[test]
    fn density_report_for_linear_polynomial() {
        let rep = density_report(&PolyQ::from_i64(&[-3, 1]), 200).unwrap();
        assert_eq!(rep.s1_density, "1");
        assert_eq!(rep.s2_density, "1");
        assert_eq!(rep.empirical_root_density, "1");
        assert_eq!(rep.empirical_zero_density, "1");
        assert_eq!(rep.strict_gap_witness, None);
    }

    #[test]
    fn density_report_for_gaussian_polynomial() {
        let rep = density_report(&PolyQ::from_i64(&[1, 0, 1]), 2000).unwrap();
        assert_eq!(rep.s1_density, "1/2");
        assert_eq!(rep.s2_density, "0");
        assert_eq!(rep.empirical_zero_density, "0");
        assert_eq!(rep.strict_gap_witness, Some(0));
    }

    #[test]
    fn named_groups_are_valid() {
        for (name, order) in [("C2", 2), ("C3", 3), ("S3", 6)] {
            let g = FiniteGroupTable::named(name).unwrap();
            assert_eq!(g.order(), order);
        }
        assert!(FiniteGroupTable::named("C4").is_err());
        // non-associative table is rejected
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroupTable::from_table(bad).is_err());
    }

    #[test]
    fn wreath_counts_for_small_cases() {
        let c2 = FiniteGroupTable::named("C2").unwrap();
        let rep = wreath_check(&c2, 3).unwrap();
        assert_eq!(rep.total, 128);
        assert_eq!(rep.lower_bound, "64");
        assert!(rep.pass);

        let s3 = FiniteGroupTable::named("S3").unwrap();
        let rep = wreath_check(&s3, 1).unwrap();
        assert_eq!(rep.total, 384);
        assert!(rep.pass, "negative lower bound passes trivially");
    }

    #[test]
    fn trivial_group_wreath_is_vacuous() {
        let g = FiniteGroupTable::from_table(vec![vec![0]]).unwrap();
        let rep = wreath_check(&g, 2).unwrap();
        assert_eq!(rep.satisfying, rep.total);
        assert!(rep.pass);
    }

    #[test]
    fn commutation_criterion_matches_table() {
        let s3 = FiniteGroupTable::named("S3").unwrap();
        let n = s3.order();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..500 {
            let a = WreathElem {
                phi: (0..n).map(|_| rng.gen_range(0..2u8)).collect(),
                sigma: rng.gen_range(0..n),
            };
            let b = WreathElem {
                phi: (0..n).map(|_| rng.gen_range(0..2u8)).collect(),
                sigma: rng.gen_range(0..n),
            };
            let direct = wreath_mul(&s3, &a, &b) == wreath_mul(&s3, &b, &a);
            let crit =
                wreath_commute_by_criterion(&s3, &a.phi, a.sigma, &b.phi, b.sigma);
            assert_eq!(direct, crit);
        }
    }
}
