//! Automorphism groups of Galois number fields: composition tables, conjugacy
//! classes, Frobenius elements at unramified primes, and normal bases.

use super::{factor_over_field, NFElement, NumberField, PolyNF};
use crate::exact_arith::{factor_mod_p, is_prime, rat_mod_p, PolyFp, Rat};
use crate::{brute_force_budget, Error, Result};
use num::{BigInt, Zero};
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use std::sync::Arc;

/// A field automorphism, determined by the image of the generator θ.
#[derive(Clone)]
pub struct Automorphism {
    theta_image: NFElement,
    /// powers 1, σ(θ), σ(θ)^2, ..., σ(θ)^{n-1}
    image_powers: Vec<NFElement>,
}

impl Automorphism {
    fn new(theta_image: NFElement) -> Self {
        let n = theta_image.field().degree();
        let mut image_powers = Vec::with_capacity(n);
        let mut cur = theta_image.field().one();
        for _ in 0..n {
            image_powers.push(cur.clone());
            cur = cur.mul(&theta_image);
        }
        Automorphism {
            theta_image,
            image_powers,
        }
    }

    pub fn theta_image(&self) -> &NFElement {
        &self.theta_image
    }

    /// Apply to an element of the field.
    pub fn apply(&self, x: &NFElement) -> NFElement {
        let mut acc = x.field().zero();
        for (c, pw) in x.coords().iter().zip(&self.image_powers) {
            if !c.is_zero() {
                acc = acc.add(&pw.scale(c));
            }
        }
        acc
    }
}

/// Data attached to a rational prime: ramification status, a chosen
/// irreducible factor of the minimal polynomial mod p, and (when unramified)
/// the Frobenius automorphism pinned down by that factor.
#[derive(Clone, Debug)]
pub struct PrimeLocalData {
    pub p: u64,
    pub ramified: bool,
    pub chosen_factor: PolyFp,
    pub frobenius: Option<usize>,
}

/// The full automorphism group of a Galois number field, with its composition
/// table, conjugacy classes, and centralizers precomputed.
pub struct GaloisGroup {
    field: Arc<NumberField>,
    autos: Vec<Automorphism>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    class_of: Vec<usize>,
    class_reps: Vec<usize>,
    classes: Vec<Vec<usize>>,
    /// witness[i] = w with σ_i = σ_w ∘ rep ∘ σ_w⁻¹
    witness: Vec<usize>,
    /// centralizer of each class representative, as sorted element indices
    centralizers: Vec<Vec<usize>>,
}

impl GaloisGroup {
    /// Compute the automorphism group; fails with `NonGalois` if the field is
    /// not normal over Q.
    pub fn new(field: &Arc<NumberField>) -> Result<Arc<GaloisGroup>> {
        let images = find_theta_images(field)?;
        let n = field.degree();
        if images.len() != n {
            return Err(Error::NonGalois(format!(
                "found {} automorphisms of a degree-{} field",
                images.len(),
                n
            )));
        }
        let mut autos: Vec<Automorphism> = images.into_iter().map(Automorphism::new).collect();
        // identity first; the rest keep a deterministic coordinate order
        let theta = field.theta();
        let id_pos = autos
            .iter()
            .position(|a| a.theta_image == theta)
            .ok_or_else(|| Error::Invariant("identity automorphism missing".into()))?;
        autos.swap(0, id_pos);
        autos[1..].sort_by(|a, b| {
            coord_cmp(a.theta_image.coords(), b.theta_image.coords())
        });

        let ord = autos.len();
        let index_of = |img: &NFElement| -> Result<usize> {
            autos
                .iter()
                .position(|a| a.theta_image == *img)
                .ok_or_else(|| Error::Invariant("composition left the group".into()))
        };
        let mut table = vec![vec![0usize; ord]; ord];
        for i in 0..ord {
            for j in 0..ord {
                let img = autos[i].apply(autos[j].theta_image());
                table[i][j] = index_of(&img)?;
            }
        }
        let mut inverse = vec![0usize; ord];
        for i in 0..ord {
            inverse[i] = (0..ord)
                .find(|&j| table[i][j] == 0)
                .ok_or_else(|| Error::Invariant("element without inverse".into()))?;
        }

        let mut class_of = vec![usize::MAX; ord];
        let mut class_reps = Vec::new();
        let mut classes = Vec::new();
        let mut witness = vec![0usize; ord];
        for r in 0..ord {
            if class_of[r] != usize::MAX {
                continue;
            }
            let cid = class_reps.len();
            let mut members = Vec::new();
            for w in 0..ord {
                let conj = table[table[w][r]][inverse[w]];
                if class_of[conj] == usize::MAX {
                    class_of[conj] = cid;
                    witness[conj] = w;
                    members.push(conj);
                }
            }
            members.sort_unstable();
            class_reps.push(r);
            classes.push(members);
        }
        let centralizers = class_reps
            .iter()
            .map(|&r| {
                (0..ord)
                    .filter(|&w| table[w][r] == table[r][w])
                    .collect::<Vec<_>>()
            })
            .collect();

        Ok(Arc::new(GaloisGroup {
            field: Arc::clone(field),
            autos,
            table,
            inverse,
            class_of,
            class_reps,
            classes,
            witness,
            centralizers,
        }))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.autos.len()
    }

    pub fn auto(&self, i: usize) -> &Automorphism {
        &self.autos[i]
    }

    pub fn apply(&self, i: usize, x: &NFElement) -> NFElement {
        self.autos[i].apply(x)
    }

    /// Index of σ_i ∘ σ_j.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_rep(&self, cid: usize) -> usize {
        self.class_reps[cid]
    }

    pub fn class_members(&self, cid: usize) -> &[usize] {
        &self.classes[cid]
    }

    /// A w with σ_i = σ_w ∘ rep ∘ σ_w⁻¹ for the representative of i's class.
    pub fn conjugating_witness(&self, i: usize) -> usize {
        self.witness[i]
    }

    /// Centralizer of the representative of class `cid`.
    pub fn centralizer_of_rep(&self, cid: usize) -> &[usize] {
        &self.centralizers[cid]
    }

    /// Local data at a prime: factor the minimal polynomial mod p, pick the
    /// canonically least irreducible factor, and (if unramified) identify the
    /// Frobenius automorphism σ with σ(θ) ≡ θ^p mod (p, chosen factor).
    pub fn prime_local_data(&self, p: u64) -> Result<PrimeLocalData> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mbar = PolyFp::from_int_coeffs(p, self.field.min_poly_int())?;
        let factors = factor_mod_p(&mbar)?;
        let ramified = factors.iter().any(|&(_, m)| m > 1);
        let chosen_factor = factors
            .iter()
            .map(|(f, _)| f)
            .min_by(|a, b| a.canonical_cmp(b))
            .expect("nonzero polynomial has a factor")
            .clone();
        if ramified {
            return Ok(PrimeLocalData {
                p,
                ramified,
                chosen_factor,
                frobenius: None,
            });
        }
        let frobenius = Some(self.frobenius_for_factor(p, &chosen_factor)?);
        Ok(PrimeLocalData {
            p,
            ramified,
            chosen_factor,
            frobenius,
        })
    }

    /// Local data for every irreducible factor of the minimal polynomial at
    /// an unramified prime. Class function residues must not depend on which
    /// factor is chosen.
    pub fn local_data_all_factors(&self, p: u64) -> Result<Vec<PrimeLocalData>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mbar = PolyFp::from_int_coeffs(p, self.field.min_poly_int())?;
        let factors = factor_mod_p(&mbar)?;
        if factors.iter().any(|&(_, m)| m > 1) {
            return Err(Error::Ramified(p));
        }
        factors
            .into_iter()
            .map(|(f, _)| {
                let frobenius = Some(self.frobenius_for_factor(p, &f)?);
                Ok(PrimeLocalData {
                    p,
                    ramified: false,
                    chosen_factor: f,
                    frobenius,
                })
            })
            .collect()
    }

    /// The unique automorphism with σ(θ) ≡ θ^p mod (p, factor).
    fn frobenius_for_factor(&self, p: u64, factor: &PolyFp) -> Result<usize> {
        let target = PolyFp::x_pow_p_mod(factor);
        let mut found = None;
        for (i, a) in self.autos.iter().enumerate() {
            let mut coeffs = Vec::with_capacity(a.theta_image.coords().len());
            for c in a.theta_image.coords() {
                coeffs.push(rat_mod_p(c, p)?);
            }
            let img = PolyFp::new_unchecked(p, coeffs).rem(factor);
            if img == target {
                if found.is_some() {
                    return Err(Error::Invariant(format!(
                        "Frobenius at p = {} is not unique",
                        p
                    )));
                }
                found = Some(i);
            }
        }
        found.ok_or_else(|| {
            Error::Invariant(format!("no Frobenius automorphism found at p = {}", p))
        })
    }

    /// Conjugacy class of Frobenius at an unramified prime.
    pub fn frobenius_class(&self, p: u64) -> Result<usize> {
        let data = self.prime_local_data(p)?;
        match data.frobenius {
            Some(i) => Ok(self.class_of[i]),
            None => Err(Error::Ramified(p)),
        }
    }

    /// An element θ₀ whose orbit {σ(θ₀)} is a Q-basis of the field (a normal
    /// basis). Returns θ₀ and its images aligned with the automorphism order.
    pub fn normal_basis_generator(&self) -> Result<(NFElement, Vec<NFElement>)> {
        let n = self.field.degree();
        let theta = self.field.theta();
        for c in 0..16i64 {
            let cand = theta.add(&self.field.from_rat(Rat::from_integer(BigInt::from(c))));
            if let Some(images) = self.normal_basis_images(&cand) {
                return Ok((cand, images));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f726d616c);
        let budget = (brute_force_budget() / 5000).max(64);
        for _ in 0..budget {
            let coords: Vec<Rat> = (0..n)
                .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-4i64..=4))))
                .collect();
            let cand = self.field.element(coords);
            if cand.is_zero() {
                continue;
            }
            if let Some(images) = self.normal_basis_images(&cand) {
                return Ok((cand, images));
            }
        }
        Err(Error::SearchExhausted("normal basis generator".into()))
    }

    fn normal_basis_images(&self, cand: &NFElement) -> Option<Vec<NFElement>> {
        let n = self.field.degree();
        if self.autos.len() != n {
            return None;
        }
        let images: Vec<NFElement> = self.autos.iter().map(|a| a.apply(cand)).collect();
        let rows: Vec<Vec<Rat>> = images.iter().map(|x| x.coords().to_vec()).collect();
        if rows_independent(&rows, n) {
            Some(images)
        } else {
            None
        }
    }
}

fn rows_independent(rows: &[Vec<Rat>], width: usize) -> bool {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut rank = 0usize;
    for c in 0..width {
        let Some(pr) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let pv = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &pv;
                for j in c..width {
                    let v = &m[rank][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank == rows.len()
}

fn coord_cmp(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.cmp(y);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// All images of θ under field automorphisms, i.e. the roots of the minimal
/// polynomial that lie in the field itself.
fn find_theta_images(field: &Arc<NumberField>) -> Result<Vec<NFElement>> {
    if field.is_rational() {
        return Ok(vec![field.zero()]);
    }
    if let Some(data) = field.splitting() {
        let r = data.root_coords.len();
        if r <= 8 {
            return images_from_root_permutations(field, r);
        }
    }
    // fall back to factoring the minimal polynomial over the field
    let m = PolyNF::from_polyq(field, field.min_poly());
    let mut out = Vec::new();
    for (f, _) in factor_over_field(&m)? {
        if f.degree() == 1 {
            out.push(f.coeff(0).neg());
        }
    }
    Ok(out)
}

/// When the field is a splitting field with θ = Σ e_i ρ_i, every automorphism
/// permutes the roots ρ, so candidate images of θ are Σ e_i ρ_{π(i)} over
/// permutations π. Keep those annihilated by the minimal polynomial.
fn images_from_root_permutations(field: &Arc<NumberField>, r: usize) -> Result<Vec<NFElement>> {
    let data = field.splitting().expect("checked by caller");
    let roots: Vec<NFElement> = data
        .root_coords
        .iter()
        .map(|c| field.element(c.clone()))
        .collect();
    let m = PolyNF::from_polyq(field, field.min_poly());
    let mut out: Vec<NFElement> = Vec::new();
    let mut perm: Vec<usize> = (0..r).collect();
    loop {
        let mut cand = field.zero();
        for (e, &pi) in data.theta_expr.iter().zip(&perm) {
            if !e.is_zero() {
                cand = cand.add(&roots[pi].scale(e));
            }
        }
        if !out.contains(&cand) && m.eval(&cand).is_zero() {
            out.push(cand);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::splitting_field;
    use crate::exact_arith::PolyQ;

    fn group_of(poly: &[i64]) -> Arc<GaloisGroup> {
        let (field, _) = splitting_field(&PolyQ::from_i64(poly)).unwrap();
        GaloisGroup::new(&field).unwrap()
    }

    #[test]
    fn quadratic_group_and_frobenius() {
        let g = group_of(&[-5, 0, 1]);
        assert_eq!(g.order(), 2);
        assert_eq!(g.class_count(), 2);
        // 5 is a square mod 11 (4^2 = 16 = 5), not mod 7; 5 ramifies
        assert_eq!(g.frobenius_class(11).unwrap(), g.class_of(0));
        assert_ne!(g.frobenius_class(7).unwrap(), g.class_of(0));
        assert!(matches!(g.frobenius_class(5), Err(Error::Ramified(5))));
        assert!(g.prime_local_data(5).unwrap().ramified);
    }

    #[test]
    fn symmetric_group_on_cube_roots() {
        let g = group_of(&[-2, 0, 0, 1]);
        assert_eq!(g.order(), 6);
        assert_eq!(g.class_count(), 3);
        let mut sizes: Vec<usize> = (0..3).map(|c| g.class_members(c).len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        // group axioms: associativity on the composition table
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    assert_eq!(
                        g.compose(g.compose(i, j), k),
                        g.compose(i, g.compose(j, k))
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_classes_track_factorization_shape() {
        let g = group_of(&[-2, 0, 0, 1]);
        let size_at = |p: u64| g.class_members(g.frobenius_class(p).unwrap()).len();
        // x^3 - 2 splits mod 31 (4^3 = 64 = 2), has one root mod 5 (3^3 = 27),
        // and none mod 7
        assert_eq!(size_at(31), 1);
        assert_eq!(size_at(5), 3);
        assert_eq!(size_at(7), 2);
    }

    #[test]
    fn witnesses_and_centralizers_are_consistent() {
        let g = group_of(&[-2, 0, 0, 1]);
        for i in 0..g.order() {
            let cid = g.class_of(i);
            let r = g.class_rep(cid);
            let w = g.conjugating_witness(i);
            assert_eq!(g.compose(g.compose(w, r), g.inverse_of(w)), i);
        }
        for cid in 0..g.class_count() {
            let r = g.class_rep(cid);
            let cent = g.centralizer_of_rep(cid);
            assert_eq!(cent.len() * g.class_members(cid).len(), g.order());
            for &w in cent {
                assert_eq!(g.compose(w, r), g.compose(r, w));
            }
        }
    }

    #[test]
    fn normal_basis_for_gaussian_field() {
        let g = group_of(&[1, 0, 1]);
        let (theta0, images) = g.normal_basis_generator().unwrap();
        assert_eq!(images.len(), 2);
        assert_eq!(images[0], theta0);
        assert_ne!(images[1], theta0);
    }

    #[test]
    fn frobenius_fixes_chosen_factor_semantics() {
        // degree-6 field: unramified Frobenius should act as x -> x^p on the
        // residue field for every small prime not dividing the discriminant
        let g = group_of(&[-2, 0, 0, 1]);
        for p in [5u64, 7, 11, 13, 31] {
            let data = g.prime_local_data(p).unwrap();
            assert!(!data.ramified);
            let f = data.frobenius.unwrap();
            // order of Frobenius = residue degree = degree of chosen factor
            let mut e = 1usize;
            let mut cur = f;
            while cur != 0 {
                cur = g.compose(f, cur);
                e += 1;
            }
            assert_eq!(e, data.chosen_factor.degree());
        }
    }
}
