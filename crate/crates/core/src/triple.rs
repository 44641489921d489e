//! Finite real spectral triples: data model, axiom verification, products.
//!
//! Antilinear operators are stored as a unitary matrix composed with
//! mandatory componentwise conjugation, so every axiom involving the real
//! structure turns into a plain matrix identity in the matrix part and
//! entrywise conjugates.

use crate::numlin::{kron, CMatrix, C64, ONE, ZERO};
use crate::report::Report;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Signs `(ε, ε′, ε″)` in `J² = ε`, `JD = ε′DJ`, `Jγ = ε″γJ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KOSigns {
    pub eps: i8,
    pub eps_prime: i8,
    pub eps_double_prime: i8,
}

impl KOSigns {
    pub fn new(eps: i8, eps_prime: i8, eps_double_prime: i8) -> Result<Self> {
        for s in [eps, eps_prime, eps_double_prime] {
            if s != 1 && s != -1 {
                return Err(Error::Contract(format!("KO sign must be ±1, got {s}")));
            }
        }
        Ok(Self { eps, eps_prime, eps_double_prime })
    }
}

impl std::fmt::Display for KOSigns {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pm = |s: i8| if s > 0 { "+1" } else { "-1" };
        write!(f, "({},{},{})", pm(self.eps), pm(self.eps_prime), pm(self.eps_double_prime))
    }
}

/// Antilinear isometry `v ↦ M · conj(v)` with unitary matrix part `M`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AntiUnitary {
    pub matrix_part: CMatrix,
}

impl AntiUnitary {
    pub fn new(matrix_part: CMatrix) -> Self {
        Self { matrix_part }
    }

    pub fn dim(&self) -> usize {
        self.matrix_part.rows()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let conj: Vec<C64> = v.iter().map(|z| z.conj()).collect();
        self.matrix_part.mul_vec(&conj)
    }

    /// `J X J⁻¹` as a linear operator: `M conj(X) M*`.
    pub fn conjugate_operator(&self, x: &CMatrix) -> CMatrix {
        self.matrix_part.mul(&x.conj()).mul(&self.matrix_part.adjoint())
    }

    /// Tensor product of antiunitaries: matrix parts Kronecker.
    pub fn tensor(&self, other: &AntiUnitary) -> Result<AntiUnitary> {
        Ok(AntiUnitary::new(kron(&self.matrix_part, &other.matrix_part)?))
    }
}

/// Grading: a genuine `Z_2` matrix for even triples, or the literal
/// identity marker for odd ones.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Grading {
    /// Odd triple, `γ = 1`.
    Identity,
    Even(CMatrix),
}

impl Grading {
    pub fn is_even(&self) -> bool {
        matches!(self, Grading::Even(_))
    }

    pub fn matrix(&self, dim: usize) -> CMatrix {
        match self {
            Grading::Identity => CMatrix::identity(dim),
            Grading::Even(g) => g.clone(),
        }
    }
}

/// Multi-matrix algebra `⊕_s M_{k_s}` together with the images of all its
/// matrix units under a unital *-homomorphism into `B(H)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockAlgebra {
    pub summand_dims: Vec<usize>,
    /// `units[flat(s,i,j)]` is the image of the matrix unit `e^{(s)}_{ij}`.
    units: Vec<CMatrix>,
}

impl BlockAlgebra {
    pub fn new(summand_dims: Vec<usize>, units: Vec<CMatrix>) -> Result<Self> {
        let expect: usize = summand_dims.iter().map(|d| d * d).sum();
        if units.len() != expect {
            return Err(Error::Shape(format!(
                "algebra with summands {:?} needs {} unit images, got {}",
                summand_dims,
                expect,
                units.len()
            )));
        }
        Ok(Self { summand_dims, units })
    }

    pub fn basis_len(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[CMatrix] {
        &self.units
    }

    fn flat(&self, s: usize, i: usize, j: usize) -> usize {
        let offset: usize = self.summand_dims[..s].iter().map(|d| d * d).sum();
        offset + i * self.summand_dims[s] + j
    }

    pub fn unit(&self, s: usize, i: usize, j: usize) -> &CMatrix {
        &self.units[self.flat(s, i, j)]
    }

    /// Inverse of `flat`: summand and unit indices of basis element `k`.
    pub fn unflatten(&self, mut k: usize) -> (usize, usize, usize) {
        for (s, &d) in self.summand_dims.iter().enumerate() {
            if k < d * d {
                return (s, k / d, k % d);
            }
            k -= d * d;
        }
        panic!("unflatten: index out of range");
    }

    /// Embeds a tuple of summand blocks.
    pub fn embed(&self, blocks: &[CMatrix]) -> Result<CMatrix> {
        if blocks.len() != self.summand_dims.len() {
            return Err(Error::Shape("embed: one block per summand required".into()));
        }
        let dim = self.units[0].rows();
        let mut out = CMatrix::zeros(dim, dim);
        for (s, b) in blocks.iter().enumerate() {
            let d = self.summand_dims[s];
            if b.rows() != d || b.cols() != d {
                return Err(Error::Shape(format!("embed: summand {s} expects a {d}x{d} block")));
            }
            for i in 0..d {
                for j in 0..d {
                    if b[(i, j)] != ZERO {
                        out.add_assign(&self.unit(s, i, j).scale(b[(i, j)]));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Structure-constant residuals of the stored embedding:
    /// products, adjoints and unitality of the unit images.
    pub fn homomorphism_report(&self, tol: f64) -> Report {
        let mut rep = Report::new();
        let dim = self.units[0].rows();
        let mut max_prod = 0.0_f64;
        let mut max_adj = 0.0_f64;
        for a in 0..self.units.len() {
            let (s, i, j) = self.unflatten(a);
            max_adj = max_adj.max(self.units[a].adjoint().dist(self.unit(s, j, i)));
            for b in 0..self.units.len() {
                let (t, k, l) = self.unflatten(b);
                let prod = self.units[a].mul(&self.units[b]);
                let expect = if s == t && j == k {
                    self.unit(s, i, l).clone()
                } else {
                    CMatrix::zeros(dim, dim)
                };
                max_prod = max_prod.max(prod.dist(&expect));
            }
        }
        let mut unit_sum = CMatrix::zeros(dim, dim);
        for (s, &d) in self.summand_dims.iter().enumerate() {
            for i in 0..d {
                unit_sum.add_assign(self.unit(s, i, i));
            }
        }
        rep.check("algebra: structure constants", max_prod, tol, dim, 1.0);
        rep.check("algebra: adjoints of units", max_adj, tol, dim, 1.0);
        rep.check("algebra: unitality", unit_sum.dist(&CMatrix::identity(dim)), tol, dim, 1.0);
        rep
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteRealSpectralTriple {
    pub dim_h: usize,
    pub algebra: BlockAlgebra,
    pub dirac: CMatrix,
    pub grading: Grading,
    pub real_structure: AntiUnitary,
    pub signs: KOSigns,
}

/// Axiom residuals plus the KO signs measured from the operators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AxiomReport {
    pub report: Report,
    pub measured_signs: KOSigns,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.report.all_pass()
    }
}

impl FiniteRealSpectralTriple {
    pub fn is_even(&self) -> bool {
        self.grading.is_even()
    }

    pub fn gamma_matrix(&self) -> CMatrix {
        self.grading.matrix(self.dim_h)
    }

    /// Chirality projector `(1+γ)/2`.
    pub fn positive_chirality_projector(&self) -> CMatrix {
        let g = self.gamma_matrix();
        g.add(&CMatrix::identity(self.dim_h)).scale(C64::new(0.5, 0.0))
    }
}

/// Returns the `±1` giving the smaller residual, with that residual.
fn measure_sign(plus: f64, minus: f64) -> (i8, f64) {
    if plus <= minus {
        (1, plus)
    } else {
        (-1, minus)
    }
}

/// Verifies every real-spectral-triple axiom and reports residuals.
pub fn check_axioms(t: &FiniteRealSpectralTriple, tol: f64) -> Result<AxiomReport> {
    let n = t.dim_h;
    let d = &t.dirac;
    if d.rows() != n || d.cols() != n || t.real_structure.dim() != n {
        return Err(Error::Shape("check_axioms: operator dimensions disagree".into()));
    }
    let mut rep = Report::new();
    let id = CMatrix::identity(n);
    let dnorm = d.fro_norm().max(1.0);

    rep.check("D self-adjoint", d.hermiticity_residual(), tol, n, dnorm);

    let g = t.gamma_matrix();
    rep.check("γ involutive", g.mul(&g).dist(&id), tol, n, 1.0);
    rep.check("γ self-adjoint", g.hermiticity_residual(), tol, n, 1.0);
    let mut gamma_comm = 0.0_f64;
    for a in t.algebra.units() {
        gamma_comm = gamma_comm.max(g.mul(a).dist(&a.mul(&g)));
    }
    rep.check("[γ, a] = 0", gamma_comm, tol, n, 1.0);
    if t.is_even() {
        rep.check("{γ, D} = 0", g.mul(d).add(&d.mul(&g)).fro_norm(), tol, n, dnorm);
    }

    let j = &t.real_structure.matrix_part;
    let (ju1, ju2) = j.unitarity_residuals();
    rep.check("J matrix part unitary", ju1.max(ju2), tol, n, 1.0);

    // J² = ε: matrix identity M conj(M) = ε I
    let jj = j.mul(&j.conj());
    let (eps, r_eps) = measure_sign(jj.dist(&id), jj.add(&id).fro_norm());
    rep.check(format!("J² = ε with ε = {eps:+}"), r_eps, tol, n, 1.0);
    rep.push(
        format!("ε matches declared {:+}", t.signs.eps),
        if eps == t.signs.eps { 0.0 } else { 1.0 },
        0.5,
    );

    // JD = ε′DJ: M conj(D) = ε′ D M
    let lhs = j.mul(&d.conj());
    let rhs = d.mul(j);
    let (epsp, r_epsp) = measure_sign(lhs.dist(&rhs), lhs.add(&rhs).fro_norm());
    rep.check(format!("JD = ε′DJ with ε′ = {epsp:+}"), r_epsp, tol, n, dnorm);
    rep.push(
        format!("ε′ matches declared {:+}", t.signs.eps_prime),
        if epsp == t.signs.eps_prime { 0.0 } else { 1.0 },
        0.5,
    );

    // Jγ = ε″γJ: M conj(γ) = ε″ γ M
    let lhs = j.mul(&g.conj());
    let rhs = g.mul(j);
    let (epspp, r_epspp) = measure_sign(lhs.dist(&rhs), lhs.add(&rhs).fro_norm());
    rep.check(format!("Jγ = ε″γJ with ε″ = {epspp:+}"), r_epspp, tol, n, 1.0);
    rep.push(
        format!("ε″ matches declared {:+}", t.signs.eps_double_prime),
        if epspp == t.signs.eps_double_prime { 0.0 } else { 1.0 },
        0.5,
    );

    // order-zero and first-order conditions over all basis pairs
    let units = t.algebra.units();
    let conjugated: Vec<CMatrix> = map_units(units, |b| t.real_structure.conjugate_operator(b));
    let commutators: Vec<CMatrix> = map_units(units, |a| d.mul(a).sub(&a.mul(d)));
    let (zero_res, first_res) = order_conditions(units, &commutators, &conjugated);
    rep.check("order zero: [a, JbJ⁻¹] = 0", zero_res, tol, n, 1.0);
    rep.check("first order: [[D,a], JbJ⁻¹] = 0", first_res, tol, n, dnorm);

    Ok(AxiomReport {
        report: rep,
        measured_signs: KOSigns { eps, eps_prime: epsp, eps_double_prime: epspp },
    })
}

fn map_units(units: &[CMatrix], f: impl Fn(&CMatrix) -> CMatrix + Sync + Send) -> Vec<CMatrix> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        return units.par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    units.iter().map(f).collect()
}

/// Max residuals of the order-zero and first-order conditions over all
/// pairs. Parallel over the pair family.
fn order_conditions(
    units: &[CMatrix],
    commutators: &[CMatrix],
    conjugated: &[CMatrix],
) -> (f64, f64) {
    let pairs: Vec<(usize, usize)> =
        (0..units.len()).flat_map(|a| (0..conjugated.len()).map(move |b| (a, b))).collect();
    let body = |&(a, b): &(usize, usize)| -> (f64, f64) {
        let bc = &conjugated[b];
        let zero = units[a].mul(bc).dist(&bc.mul(&units[a]));
        let first = commutators[a].mul(bc).dist(&bc.mul(&commutators[a]));
        (zero, first)
    };
    let fold = |acc: (f64, f64), v: (f64, f64)| (acc.0.max(v.0), acc.1.max(v.1));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        return pairs.par_iter().map(body).reduce(|| (0.0, 0.0), fold);
    }
    #[cfg(not(feature = "parallel"))]
    pairs.iter().map(body).fold((0.0, 0.0), fold)
}

/// Sequential first-order sweep (bench reference).
pub fn first_order_residual_seq(t: &FiniteRealSpectralTriple) -> f64 {
    let units = t.algebra.units();
    let d = &t.dirac;
    let conjugated: Vec<CMatrix> =
        units.iter().map(|b| t.real_structure.conjugate_operator(b)).collect();
    let commutators: Vec<CMatrix> = units.iter().map(|a| d.mul(a).sub(&a.mul(d))).collect();
    let mut max = 0.0_f64;
    for c in &commutators {
        for bc in &conjugated {
            max = max.max(c.mul(bc).dist(&bc.mul(c)));
        }
    }
    max
}

/// Parallel-dispatch twin of [`first_order_residual_seq`].
pub fn first_order_residual(t: &FiniteRealSpectralTriple) -> f64 {
    let units = t.algebra.units();
    let d = &t.dirac;
    let conjugated: Vec<CMatrix> = map_units(units, |b| t.real_structure.conjugate_operator(b));
    let commutators: Vec<CMatrix> = map_units(units, |a| d.mul(a).sub(&a.mul(d)));
    order_conditions(units, &commutators, &conjugated).1
}

/// Product of two real spectral triples. The second factor must be even:
/// `D = D₁⊗γ₂ + 1⊗D₂`, `γ = γ₁⊗γ₂`, `J = J₁⊗J₂`; KO signs are measured
/// from the composite operators, not looked up.
pub fn product_triple(
    t1: &FiniteRealSpectralTriple,
    t2: &FiniteRealSpectralTriple,
) -> Result<FiniteRealSpectralTriple> {
    let g2 = match &t2.grading {
        Grading::Even(g) => g.clone(),
        Grading::Identity => {
            return Err(Error::Contract(
                "product_triple: the second factor must be an even triple".into(),
            ))
        }
    };
    let dim = t1.dim_h * t2.dim_h;
    let id1 = CMatrix::identity(t1.dim_h);
    let dirac = kron(&t1.dirac, &g2)?.add(&kron(&id1, &t2.dirac)?);
    let grading = match &t1.grading {
        Grading::Identity => Grading::Even(kron(&id1, &g2)?),
        Grading::Even(g1) => Grading::Even(kron(g1, &g2)?),
    };
    let real_structure = t1.real_structure.tensor(&t2.real_structure)?;

    // algebra: summand grid, matrix units e_ij ⊗ e_kl re-indexed in M_{d1·d2}
    let mut summand_dims = Vec::new();
    let mut units = Vec::new();
    for (s, &d1) in t1.algebra.summand_dims.iter().enumerate() {
        for (t, &d2) in t2.algebra.summand_dims.iter().enumerate() {
            summand_dims.push(d1 * d2);
            for a in 0..d1 * d2 {
                for b in 0..d1 * d2 {
                    let (i, k) = (a / d2, a % d2);
                    let (j, l) = (b / d2, b % d2);
                    units.push(kron(t1.algebra.unit(s, i, j), t2.algebra.unit(t, k, l))?);
                }
            }
        }
    }
    let algebra = BlockAlgebra::new(summand_dims, units)?;

    // measure the signs from the constructed operators
    let j = &real_structure.matrix_part;
    let id = CMatrix::identity(dim);
    let jj = j.mul(&j.conj());
    let (eps, _) = measure_sign(jj.dist(&id), jj.add(&id).fro_norm());
    let gm = grading.matrix(dim);
    let (epsp, _) = measure_sign(
        j.mul(&dirac.conj()).dist(&dirac.mul(j)),
        j.mul(&dirac.conj()).add(&dirac.mul(j)).fro_norm(),
    );
    let (epspp, _) = measure_sign(
        j.mul(&gm.conj()).dist(&gm.mul(j)),
        j.mul(&gm.conj()).add(&gm.mul(j)).fro_norm(),
    );

    Ok(FiniteRealSpectralTriple {
        dim_h: dim,
        algebra,
        dirac,
        grading,
        real_structure,
        signs: KOSigns { eps, eps_prime: epsp, eps_double_prime: epspp },
    })
}

/// The smallest even real triple with a nontrivial Dirac: `A = C ⊕ C` on
/// `H = C⁴`.
///
/// Basis order (p₁, p₂, p̄₁, p̄₂); the algebra acts as
/// `diag(a₁, a₁, a₁, a₂)`, `J` swaps particles with antiparticles
/// composed with conjugation, `γ = diag(1,−1,1,−1)` and
/// `D = m(e₁₄ + e₂₃) + m̄(e₄₁ + e₃₂)`.
/// All axioms hold, with `[D, a] ≠ 0` whenever `a₁ ≠ a₂`.
pub fn toy_even_triple(m: C64) -> FiniteRealSpectralTriple {
    let dim = 4;
    let mut dirac = CMatrix::zeros(dim, dim);
    dirac[(0, 3)] = m;
    dirac[(3, 0)] = m.conj();
    dirac[(1, 2)] = m;
    dirac[(2, 1)] = m.conj();
    let gamma = CMatrix::diag(&[ONE, -ONE, ONE, -ONE]);
    let mut swap = CMatrix::zeros(dim, dim);
    swap[(0, 2)] = ONE;
    swap[(2, 0)] = ONE;
    swap[(1, 3)] = ONE;
    swap[(3, 1)] = ONE;
    let unit = |positions: &[usize]| {
        let mut u = CMatrix::zeros(dim, dim);
        for &p in positions {
            u[(p, p)] = ONE;
        }
        u
    };
    let algebra = BlockAlgebra::new(vec![1, 1], vec![unit(&[0, 1, 2]), unit(&[3])]).unwrap();
    FiniteRealSpectralTriple {
        dim_h: dim,
        algebra,
        dirac,
        grading: Grading::Even(gamma),
        real_structure: AntiUnitary::new(swap),
        signs: KOSigns { eps: 1, eps_prime: 1, eps_double_prime: 1 },
    }
}

/// The two-point-space candidate on `H = C²` with `A = C ⊕ C` acting
/// diagonally, `D = m(e₁₂+e₂₁)` and `J = conjugation ∘ swap`.
///
/// Every axiom except the first-order condition holds; for `m ≠ 0` the
/// commutator `[[D,a], JbJ⁻¹]` is nonzero whenever both summand
/// components differ, so `check_axioms` flags it.
pub fn two_point_candidate(m: f64) -> FiniteRealSpectralTriple {
    let mc = C64::new(m, 0.0);
    let dirac = CMatrix::two_by_two(ZERO, mc, mc, ZERO);
    let gamma = CMatrix::diag(&[ONE, -ONE]);
    let swap = CMatrix::two_by_two(ZERO, ONE, ONE, ZERO);
    let algebra = BlockAlgebra::new(
        vec![1, 1],
        vec![CMatrix::diag(&[ONE, ZERO]), CMatrix::diag(&[ZERO, ONE])],
    )
    .unwrap();
    FiniteRealSpectralTriple {
        dim_h: 2,
        algebra,
        dirac,
        grading: Grading::Even(gamma),
        real_structure: AntiUnitary::new(swap),
        signs: KOSigns { eps: 1, eps_prime: 1, eps_double_prime: -1 },
    }
}

/// The trivial triple: `A = C`, `H = C`, `D = 0`, even grading `1`, `J`
/// plain conjugation.
pub fn trivial_triple() -> FiniteRealSpectralTriple {
    FiniteRealSpectralTriple {
        dim_h: 1,
        algebra: BlockAlgebra::new(vec![1], vec![CMatrix::identity(1)]).unwrap(),
        dirac: CMatrix::zeros(1, 1),
        grading: Grading::Even(CMatrix::identity(1)),
        real_structure: AntiUnitary::new(CMatrix::identity(1)),
        signs: KOSigns { eps: 1, eps_prime: 1, eps_double_prime: 1 },
    }
}

/// Odd variant of the toy triple (grading dropped to the identity marker).
pub fn toy_odd_triple(m: C64) -> FiniteRealSpectralTriple {
    let mut t = toy_even_triple(m);
    t.grading = Grading::Identity;
    t.signs = KOSigns { eps: 1, eps_prime: 1, eps_double_prime: 1 };
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitRng;
    use crate::DEFAULT_TOL;

    #[test]
    fn trivial_triple_passes_all_axioms() {
        let t = trivial_triple();
        let rep = check_axioms(&t, DEFAULT_TOL).unwrap();
        assert!(rep.all_pass(), "{}", rep.report);
    }

    #[test]
    fn toy_even_triple_passes_with_nonzero_mass_and_nonzero_commutator() {
        let t = toy_even_triple(C64::new(1.3, 0.4));
        let rep = check_axioms(&t, DEFAULT_TOL).unwrap();
        assert!(rep.all_pass(), "{}", rep.report);
        // [D, a] must be genuinely nonzero for distinct summand values
        let a = t
            .algebra
            .embed(&[CMatrix::identity(1), CMatrix::identity(1).scale(C64::new(2.0, 0.0))])
            .unwrap();
        let comm = t.dirac.mul(&a).sub(&a.mul(&t.dirac));
        assert!(comm.fro_norm() > 0.5);
    }

    #[test]
    fn two_point_candidate_fails_exactly_the_first_order_condition() {
        let t = two_point_candidate(1.0);
        let rep = check_axioms(&t, DEFAULT_TOL).unwrap();
        assert!(!rep.all_pass());
        for e in &rep.report.entries {
            if e.name.starts_with("first order") {
                assert!(!e.pass);
                assert!(e.value > 1e-3);
            } else {
                assert!(e.pass, "unexpected failure: {}", e.name);
            }
        }
        // massless case is fine
        let t0 = two_point_candidate(0.0);
        assert!(check_axioms(&t0, DEFAULT_TOL).unwrap().all_pass());
    }

    #[test]
    fn product_of_toy_with_itself_passes() {
        let t = toy_even_triple(C64::new(0.7, -0.2));
        let p = product_triple(&t, &t).unwrap();
        assert_eq!(p.dim_h, 16);
        let rep = check_axioms(&p, DEFAULT_TOL).unwrap();
        assert!(rep.all_pass(), "{}", rep.report);
        assert_eq!(rep.measured_signs, p.signs);
    }

    #[test]
    fn product_with_odd_first_factor_is_accepted() {
        let t1 = toy_odd_triple(C64::new(0.3, 0.1));
        let t2 = toy_even_triple(C64::new(1.1, 0.0));
        let p = product_triple(&t1, &t2).unwrap();
        // γ = 1 ⊗ γ₂
        let expect = kron(&CMatrix::identity(4), &t2.gamma_matrix()).unwrap();
        assert_eq!(p.gamma_matrix(), expect);
        assert!(check_axioms(&p, DEFAULT_TOL).unwrap().all_pass());
    }

    #[test]
    fn product_rejects_odd_second_factor() {
        let t1 = toy_even_triple(C64::new(1.0, 0.0));
        let t2 = toy_odd_triple(C64::new(1.0, 0.0));
        assert!(matches!(product_triple(&t1, &t2), Err(Error::Contract(_))));
    }

    #[test]
    fn antiunitary_square_is_epsilon_on_random_vectors() {
        let t = toy_even_triple(C64::new(0.9, 0.5));
        let mut rng = SplitRng::new(11);
        for _ in 0..6 {
            let v: Vec<C64> = (0..4).map(|_| rng.complex_normal()).collect();
            let jjv = t.real_structure.apply(&t.real_structure.apply(&v));
            let res: f64 = jjv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * C64::new(t.signs.eps as f64, 0.0)).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-12);
        }
    }

    #[test]
    fn algebra_homomorphism_report_passes_for_toy() {
        let t = toy_even_triple(C64::new(0.2, 0.2));
        assert!(t.algebra.homomorphism_report(DEFAULT_TOL).all_pass());
    }
}
