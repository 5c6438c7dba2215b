//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use cqg_core::corep::{mor_dim, Corep, IrrepRegistry, Label};
use cqg_core::dual::{close_under_conjugation, DualContext, DualElement};
use cqg_core::haar::{cesaro_haar, compute_haar, f_matrix, gram_positivity, peter_weyl_check, Q_SAMPLES};
use cqg_core::hopf::CqgAlgebra;
use cqg_core::ncalg::{NcPoly, Word};
use cqg_core::presets::{self, cayley, c_of_group, group_algebra, su_q_2, FINITE_GROUPS};
use cqg_core::regrep::{check_implements, check_pentagon, regular_embedding, regular_unitary, FiniteAlgebra};
use cqg_core::scalar::Matrix;
use cqg_core::{Result, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

const HOPF_TIME_LIMIT: Duration = Duration::from_secs(60);
const FUSION_TIME_LIMIT: Duration = Duration::from_secs(300);
/// Minimal eigenvalue bound for positive definiteness at real sample points.
const EIGEN_TOL: f64 = 1e-9;
const CESARO_TARGET: f64 = 1e-6;
const CESARO_STEPS: usize = 1 << 19;
const CESARO_SEED: u64 = 20240611;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn q() -> Scalar {
    Scalar::q()
}

fn int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

fn poly(alg: &CqgAlgebra, names: &str) -> NcPoly {
    let p = alg.presentation();
    NcPoly::word(Word::from_letters(&names.split_whitespace().map(|n| p.letter(n).unwrap()).collect::<Vec<_>>()))
}

fn c1_hopf_axioms() -> Result<Outcome> {
    let start = Instant::now();
    let rep = su_q_2().verify_hopf(4);
    let t = start.elapsed();
    Ok(outcome(
        rep.passed() && t < HOPF_TIME_LIMIT,
        format!("{} monomials, {} failures, {:.2?}", rep.monomials_checked, rep.failures.len(), t),
    ))
}

fn c2_haar() -> Result<Outcome> {
    let alg = su_q_2();
    let t = compute_haar(&alg, 6)?;
    let inv = t.invariance_failures(&alg)?;
    let value = t.eval(&alg.presentation().normal_form(&poly(&alg, "g* g"))?)?;
    let oracle = int(1).checked_div(&(&int(1) + &q().pow(2)?))?;
    let mut reg = IrrepRegistry::new(&alg)?;
    reg.fusion_table(&alg, 3)?;
    let entries: Vec<(String, &Corep)> = reg.entries().iter().map(|e| (e.label.to_string(), &e.corep)).collect();
    let pw = peter_weyl_check(&entries, &t);
    // Re-derive h(γ*γ) from the vanishing of h on weight-zero entries of nontrivial irreps.
    let p = alg.presentation();
    let gg = p.normal_form(&poly(&alg, "g g*"))?;
    let gg_word = gg.terms().next().unwrap().0.clone();
    let mut derived = Vec::new();
    for e in reg.entries().iter().filter(|e| e.label.dim > 1 && e.corep.degree() <= 2) {
        for x in e.corep.entries() {
            let only = x.terms().all(|(w, _)| w.is_empty() || *w == gg_word);
            let c = x.coeff(&gg_word);
            if only && !c.is_zero() {
                derived.push((-x.constant()).checked_div(&c)?);
            }
        }
    }
    let cross = !derived.is_empty() && derived.iter().all(|d| *d == oracle);
    Ok(outcome(
        t.solution_dim() == Some(1) && inv.is_empty() && value == oracle && pw.passed() && cross,
        format!(
            "solution dim {:?}, invariance failures {}, h(g* g) = {}, Peter-Weyl {} entries ok, {} entries re-derive h(g* g)",
            t.solution_dim(),
            inv.len(),
            value,
            pw.checked,
            derived.len()
        ),
    ))
}

fn c3_f_matrix() -> Result<Outcome> {
    let alg = su_q_2();
    let t = compute_haar(&alg, 2)?;
    let u = &alg.fundamentals()[0];
    // Raises the error if the defining relation is inconsistent or the trace identity fails.
    let f = f_matrix("u", u, &alg, &t)?;
    let den = &int(1) + &q().pow(2)?;
    let oracle = Matrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => q().pow(2).unwrap().checked_div(&den).unwrap(),
        (1, 1) => int(1).checked_div(&den).unwrap(),
        _ => Scalar::zero(),
    });
    let mins: Vec<String> = f.samples.iter().map(|s| format!("{}: {:.4}", s.q0, s.min_eigenvalue.unwrap_or(f64::NAN))).collect();
    let positive = f.samples.iter().all(|s| s.min_eigenvalue.is_some_and(|e| e > EIGEN_TOL));
    Ok(outcome(
        f.matrix == oracle && positive && f.samples.len() == Q_SAMPLES.len(),
        format!("F = diag(q^2, 1)/(1 + q^2), min eigenvalues {}", mins.join(", ")),
    ))
}

/// Classical SU(2): multiply characters as Laurent polynomials in z and peel off highest weights.
fn clebsch_gordan(m: usize, n: usize) -> BTreeMap<usize, usize> {
    let chi = |d: usize| -> BTreeMap<i64, i64> { (0..d as i64).map(|k| (2 * k - (d as i64 - 1), 1)).collect() };
    let mut prod: BTreeMap<i64, i64> = BTreeMap::new();
    for (a, x) in chi(m) {
        for (b, y) in chi(n) {
            *prod.entry(a + b).or_default() += x * y;
        }
    }
    let mut out = BTreeMap::new();
    while let Some((&top, &c)) = prod.iter().rev().find(|(_, c)| **c != 0) {
        let d = (top + 1) as usize;
        *out.entry(d).or_default() += c as usize;
        for (w, k) in chi(d) {
            *prod.entry(w).or_default() -= c * k;
        }
        prod.retain(|_, c| *c != 0);
    }
    out
}

fn c4_fusion() -> Result<Outcome> {
    let start = Instant::now();
    let alg = su_q_2();
    let u = alg.fundamentals()[0].clone();
    let uu = u.tensor(&u, &alg);
    let mut reg = IrrepRegistry::new(&alg)?;
    let d = reg.decompose(&uu, 2, &alg)?;
    let mut dims: Vec<(usize, usize)> = d.components.iter().map(|c| (c.dim, c.multiplicity)).collect();
    dims.sort();
    let end = mor_dim(&uu, &uu, &alg)?;
    let rows = reg.fusion_table(&alg, 3)?;
    let mut mismatches = 0;
    for r in &rows {
        let got: BTreeMap<usize, usize> = r.summands.iter().map(|s| (s.label.dim, s.multiplicity)).collect();
        if got != clebsch_gordan(r.left.dim, r.right.dim) || !r.numeric_dims.is_empty() {
            mismatches += 1;
        }
    }
    let t = start.elapsed();
    Ok(outcome(
        dims == vec![(1, 1), (3, 1)] && end == 2 && mismatches == 0 && t < FUSION_TIME_LIMIT,
        format!("u⊗u = 1 ⊕ 3, dim Mor = {}, {} fusion rows with {} mismatches, {:.2?}", end, rows.len(), mismatches, t),
    ))
}

fn closed_registry(fa: &FiniteAlgebra) -> Result<(IrrepRegistry, bool)> {
    let alg = fa.hopf().unwrap();
    let mut reg = IrrepRegistry::new(alg)?;
    let closed = reg.close_finite(alg, fa.dim(), fa.dim())?;
    close_under_conjugation(&mut reg, alg)?;
    Ok((reg, closed))
}

fn dual_for(alg: &CqgAlgebra, reg: &IrrepRegistry) -> Result<DualContext> {
    let top = reg.entries().iter().map(|e| e.corep.degree()).max().unwrap_or(1).max(1);
    let t = compute_haar(alg, 2 * top)?;
    DualContext::new(reg, alg, &t)
}

fn all_basis(ctx: &DualContext) -> Result<Vec<DualElement>> {
    let mut out = Vec::new();
    for b in ctx.blocks() {
        for p in 0..b.dim {
            for q in 0..b.dim {
                out.push(ctx.basis(b.label, p, q)?);
            }
        }
    }
    Ok(out)
}

fn coefficients(ctx: &DualContext) -> Vec<NcPoly> {
    ctx.labels().into_iter().flat_map(|l| ctx.corep(l).unwrap().entries().to_vec()).collect()
}

/// Convolution block law against `(ω⊗ψ)Δ` on every pair of basis functionals and every coefficient.
fn convolution_mismatches(ctx: &DualContext) -> Result<usize> {
    let basis = all_basis(ctx)?;
    let xs = coefficients(ctx);
    let mut bad = 0;
    for w in &basis {
        for z in &basis {
            let wz = ctx.convolve(w, z)?;
            for x in &xs {
                if ctx.pair(&wz, x)? != ctx.convolve_eval(w, z, x)? {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad)
}

fn c5_c_s3() -> Result<Outcome> {
    let fa = c_of_group(&cayley("s3")?)?;
    let alg = fa.hopf().unwrap();
    let (reg, closed) = closed_registry(&fa)?;
    let mut dims: Vec<usize> = reg.entries().iter().map(|e| e.label.dim).collect();
    dims.sort();
    let sum_sq: usize = dims.iter().map(|d| d * d).sum();
    let rows: Vec<Vec<Scalar>> = reg
        .entries()
        .iter()
        .flat_map(|e| e.corep.entries().to_vec())
        .map(|x| fa.from_poly(&x))
        .collect::<Result<_>>()?;
    let rank = Matrix::from_rows(rows.clone())?.rank();
    let ctx = dual_for(alg, &reg)?;
    let mut block_dims: Vec<usize> = ctx.blocks().iter().map(|b| b.dim).collect();
    block_dims.sort();
    let bad = convolution_mismatches(&ctx)?;
    Ok(outcome(
        closed && dims == vec![1, 1, 2] && sum_sq == 6 && rows.len() == 6 && rank == 6 && block_dims == vec![1, 1, 2] && bad == 0,
        format!("irrep dims {:?}, Σ n² = {}, coefficient rank {} of 6, B₀ blocks {:?}, {} convolution mismatches", dims, sum_sq, rank, block_dims, bad),
    ))
}

fn c6_group_algebra() -> Result<Outcome> {
    let g = cayley("s3")?;
    let fa = group_algebra(&g)?;
    let alg = fa.hopf().unwrap();
    let reg = IrrepRegistry::new(alg)?;
    let one_dim = reg.entries().iter().filter(|e| e.label.dim == 1).count();
    let corep = |x: usize| -> Result<Corep> {
        if x == g.identity {
            Ok(Corep::trivial())
        } else {
            Ok(reg.find(&g.names[x])?.corep.clone())
        }
    };
    let mut bad = 0;
    for x in 0..g.order() {
        for y in 0..g.order() {
            let l = reg.identify(&corep(x)?.tensor(&corep(y)?, alg), alg)?;
            let want = if g.mul(x, y) == g.identity { Some(reg.trivial()) } else { Some(reg.find(&g.names[g.mul(x, y)])?.label) };
            if l != want {
                bad += 1;
            }
        }
    }
    Ok(outcome(
        reg.len() == 6 && one_dim == 6 && bad == 0,
        format!("{} irreps ({} one-dimensional), {} of 36 products disagree with the Cayley table", reg.len(), one_dim, bad),
    ))
}

fn c7_regular() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["z4", "s3"] {
        let fa = c_of_group(&cayley(name)?)?;
        let u = regular_unitary(&fa, false)?;
        let pent = check_pentagon(&u);
        let imp = check_implements(&u, &fa)?;
        let (reg, closed) = closed_registry(&fa)?;
        let emb = regular_embedding(&fa, &reg)?;
        let full = emb.entries.iter().all(|e| e.multiplicity == e.dim);
        ok &= u.unitary && pent.holds && imp.passed() && closed && emb.passed() && full;
        parts.push(format!(
            "C({}): unitary {}, pentagon {}, implements {}, slice rank {}/{}, {} irreps embed with multiplicity = dim {}",
            name,
            u.unitary,
            pent.holds,
            imp.failures.is_empty(),
            imp.slice_rank,
            imp.dim,
            emb.entries.len(),
            full
        ));
    }
    Ok(outcome(ok, parts.join("; ")))
}

fn c8_cesaro() -> Result<Outcome> {
    let fa = c_of_group(&cayley("s3")?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(CESARO_SEED);
    let raw: Vec<f64> = (0..fa.dim()).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let omega: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let uniform = 1.0 / fa.dim() as f64;
    let start_distance: f64 = omega.iter().map(|x| (x - uniform).abs()).sum();
    let r = cesaro_haar(&fa, &omega, CESARO_STEPS)?;
    let bound_ok = r.log.iter().all(|s| s.within_bound());
    let converged = r.distance <= CESARO_TARGET || r.accelerated_distance <= CESARO_TARGET;
    let first_acc = r.log.iter().find(|s| s.accelerated_distance.is_some_and(|d| d <= CESARO_TARGET)).map(|s| s.n);
    Ok(outcome(
        start_distance > 0.01 && bound_ok && converged,
        format!(
            "seed {}, ‖ω - h‖₁ = {:.3}, defect ≤ 2/n at {} logged n, ‖ω_n - h‖₁ = {:.2e}, accelerated {:.2e} (first ≤ 1e-6 at n = {:?}), n = {}",
            CESARO_SEED,
            start_distance,
            r.log.len(),
            r.distance,
            r.accelerated_distance,
            first_acc,
            CESARO_STEPS
        ),
    ))
}

fn c9_faithfulness() -> Result<Outcome> {
    let t = compute_haar(&su_q_2(), 6)?;
    let rep = gram_positivity(&t, 3, &Q_SAMPLES)?;
    let mins: Vec<String> = rep.samples.iter().map(|s| format!("{}: {:.3e}", s.q0, s.min_eigenvalue.unwrap_or(f64::NAN))).collect();
    let ok = rep.samples.iter().all(|s| s.min_eigenvalue.is_some_and(|e| e > EIGEN_TOL));
    Ok(outcome(ok, format!("{}x{} Gram matrix, min eigenvalues {}", rep.size, rep.size, mins.join(", "))))
}

fn c10_wor1() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["su_q_2", "su_q_3", "a_u_i2"] {
        let alg = presets::by_name(name)?;
        for f in alg.fundamentals() {
            let r = f.verify_wor1_axiom3(&alg)?;
            ok &= r.passed();
            parts.push(format!("{} {} ({}x{}): {}", name, f.name().unwrap_or("?"), r.dim, r.dim, r.passed()));
        }
    }
    Ok(outcome(ok, parts.join(", ")))
}

/// Pairing, convolution, involution and `κ̂² = Ad K` on one algebra.
fn dual_checks(alg: &CqgAlgebra, reg: &IrrepRegistry) -> Result<(bool, String)> {
    let ctx = dual_for(alg, reg)?;
    let pairing = ctx.pairing_failures()?;
    let conv = convolution_mismatches(&ctx)?;
    let xs = coefficients(&ctx);
    let mut involution = 0;
    let mut k_bad = 0;
    for b in ctx.blocks() {
        let n = b.dim;
        for p in 0..n {
            for q in 0..n {
                let w = ctx.basis(b.label, p, q)?;
                let ws = ctx.star(&w)?;
                // Unitary blocks: (ω_pq)* = ω_qp. Every block: ω** = ω and ω*(x) = conj(ω(κ(x)*)).
                let unitary_law = !b.form.is_identity() || ws == ctx.basis(b.label, q, p)?;
                let formula = xs.iter().map(|x| Ok(ctx.pair(&ws, x)? == ctx.star_eval(&w, x)?)).collect::<Result<Vec<_>>>()?;
                if !unitary_law || ctx.star(&ws)? != w || formula.contains(&false) {
                    involution += 1;
                }
            }
        }
        let k = ctx.k_matrix(b.label)?;
        let conj = ctx.block_of(k.conjugate)?;
        let kk = DualElement::block(k.conjugate, k.matrix.clone());
        // ⟨K, u^β_pq⟩ = δ_βᾱ (FᵀY)_pq, which is F_qp on unitary blocks.
        let mut pairing_ok = k.passed();
        for l in ctx.labels() {
            let v = ctx.corep(l)?;
            for p in 0..v.dim() {
                for q in 0..v.dim() {
                    let got = ctx.pair(&kk, v.entry(p, q))?;
                    let want = if l == k.conjugate { k.matrix.get(p, q).clone() } else { Scalar::zero() };
                    let f_law = l != k.conjugate || !conj.form.is_identity() || got == *conj.f.get(q, p);
                    pairing_ok &= got == want && f_law;
                }
            }
        }
        if !pairing_ok {
            k_bad += 1;
        }
    }
    let ok = pairing.is_empty() && conv == 0 && involution == 0 && k_bad == 0;
    let blocks: Vec<String> = ctx.labels().iter().map(Label::to_string).collect();
    Ok((ok, format!("{} [{}]: {}", alg.name(), blocks.join(" "), if ok { "ok" } else { "FAILED" })))
}

fn c11_dual() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    let alg = su_q_2();
    let mut reg = IrrepRegistry::new(&alg)?;
    reg.fusion_table(&alg, 2)?;
    let (o, s) = dual_checks(&alg, &reg)?;
    ok &= o;
    parts.push(s);
    for g in FINITE_GROUPS {
        let table = cayley(g)?;
        for fa in [c_of_group(&table)?, group_algebra(&table)?] {
            let (reg, closed) = closed_registry(&fa)?;
            let (o, s) = dual_checks(fa.hopf().unwrap(), &reg)?;
            ok &= o && closed;
            parts.push(s);
        }
    }
    Ok(outcome(ok, parts.join("; ")))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 11] = [
        ("Hopf axiom suite, SU_q(2), degree ≤ 4", c1_hopf_axioms),
        ("Haar existence and uniqueness, SU_q(2), degree 6", c2_haar),
        ("Orthogonality and F-matrix, SU_q(2) fundamental", c3_f_matrix),
        ("Fusion rules, SU_q(2), depth 3", c4_fusion),
        ("Finite-group brute force, C(S3)", c5_c_s3),
        ("Group-algebra preset, ℂ[S3]", c6_group_algebra),
        ("Regular representation, C(ℤ4) and C(S3)", c7_regular),
        ("Cesàro convergence, C(S3)", c8_cesaro),
        ("Faithfulness surrogate, SU_q(2) Gram matrices", c9_faithfulness),
        ("wor1/wor2 bridge, SU_q(2), SU_q(3), A_u(I2)", c10_wor1),
        ("Dual structure, SU_q(2) and finite presets", c11_dual),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| outcome(false, format!("error: {}", e)));
        if !o.passed {
            failed += 1;
        }
        println!("{} {:>2}. {} ({:.1?}): {}", if o.passed { "PASS" } else { "FAIL" }, k + 1, name, start.elapsed(), o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
