use crate::{Input, RunConfig};
use cqg_core::corep::{fusion_json, Corep, IrrepRegistry, Label};
use cqg_core::dual::{block_f_matrix, close_under_conjugation, matrix_json, DualContext, DualElement};
use cqg_core::haar::{compute_haar, gram_positivity, peter_weyl_check, positivity_samples, HaarTable};
use cqg_core::hopf::CqgAlgebra;
use cqg_core::regrep::{check_implements, check_pentagon, regular_embedding, regular_unitary, FiniteAlgebra};
use cqg_core::scalar::Matrix;
use cqg_core::{dsl, presets, CqgError, Result, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt::Write;

pub enum Extra {
    None,
    Tensor(Option<String>),
    Opposite(bool),
    Expr(String),
}

pub struct Output {
    pub human: String,
    pub json: Value,
    pub passed: bool,
}

fn load(input: &Input) -> Result<CqgAlgebra> {
    match input {
        Input::Preset(p) => presets::by_name(p),
        Input::File(f) => {
            let text = std::fs::read_to_string(f).map_err(|e| CqgError::Io(format!("{}: {}", f.display(), e)))?;
            dsl::load(&text)
        }
    }
}

fn load_finite(input: &Input) -> Result<FiniteAlgebra> {
    match input {
        Input::Preset(p) => presets::finite_by_name(p),
        Input::File(_) => FiniteAlgebra::from_cqg(&load(input)?),
    }
}

pub fn run(command: &str, cfg: &RunConfig, extra: Extra) -> Result<Output> {
    match (command, extra) {
        ("verify-hopf", _) => verify_hopf(cfg),
        ("haar", _) => haar(cfg),
        ("f-matrix", _) => f_matrix(cfg),
        ("fuse", _) => fuse(cfg),
        ("decompose", Extra::Tensor(t)) => decompose(cfg, t.as_deref()),
        ("dual", _) => dual(cfg),
        ("regrep-check", Extra::Opposite(o)) => regrep_check(cfg, o),
        ("normalize", Extra::Expr(e)) => normalize(cfg, &e),
        ("axioms-wor1", _) => axioms_wor1(cfg),
        _ => unreachable!("command table and dispatch agree"),
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn verify_hopf(cfg: &RunConfig) -> Result<Output> {
    let alg = load(&cfg.input)?;
    alg.presentation().ensure_certified(2 * cfg.degree)?;
    let rep = alg.verify_hopf(cfg.degree);
    let mut h = format!(
        "{}: Hopf axioms on {} normal monomials of degree <= {}: {}\n",
        alg.name(),
        rep.monomials_checked,
        cfg.degree,
        mark(rep.passed())
    );
    for f in &rep.failures {
        let _ = writeln!(h, "  {} at {}: {}", f.axiom, f.monomial, f.residual);
    }
    Ok(Output { human: h, passed: rep.passed(), json: serde_json::to_value(&rep).expect("report serializes") })
}

fn haar(cfg: &RunConfig) -> Result<Output> {
    let alg = load(&cfg.input)?;
    let t = compute_haar(&alg, cfg.degree)?;
    let inv = t.invariance_failures(&alg)?;
    let fundamentals: Vec<(String, &Corep)> =
        alg.fundamentals().iter().enumerate().map(|(k, f)| (f.name().map_or(format!("u{}", k + 1), str::to_string), f)).collect();
    let pw = peter_weyl_check(&fundamentals, &t);
    let gram = gram_positivity(&t, cfg.degree / 2, &cfg.q_samples)?;
    let unique = t.solution_dim() == Some(1);
    let passed = unique && inv.is_empty() && pw.passed() && gram.passed();
    let mut h = format!("{}: Haar state on normal monomials of degree <= {}\n", alg.name(), cfg.degree);
    let values: Vec<(String, String)> = t.values().map(|(w, s)| (t.presentation().fmt_word(w), s.to_string())).collect();
    let width = values.iter().map(|(w, _)| w.len()).max().unwrap_or(1);
    for (w, s) in values.iter().filter(|(_, s)| s != "0") {
        let _ = writeln!(h, "  h({:width$}) = {}", w, s, width = width);
    }
    let _ = writeln!(h, "  zero on the other {} monomials", values.iter().filter(|(_, s)| s == "0").count());
    let _ = writeln!(h, "solution space dimension: {:?} ({})", t.solution_dim(), mark(unique));
    let _ = writeln!(h, "invariance residuals: {}", mark(inv.is_empty()));
    let _ = writeln!(h, "Peter-Weyl vanishing ({} entries): {}", pw.checked, mark(pw.passed()));
    let _ = writeln!(h, "Gram matrix on degree <= {} ({}x{}): {}", gram.degree, gram.size, gram.size, mark(gram.passed()));
    let json = json!({
        "degree": cfg.degree,
        "solution_dim": t.solution_dim(),
        "values": t.to_json(),
        "invariance_failures": inv,
        "peter_weyl": pw,
        "gram": gram,
    });
    Ok(Output { human: h, json, passed })
}

/// Registry explored to `depth` and a Haar table covering every `h(v* w)` among its entries.
fn registry_and_haar(alg: &CqgAlgebra, depth: usize) -> Result<(IrrepRegistry, HaarTable)> {
    let mut reg = IrrepRegistry::new(alg)?;
    reg.fusion_table(alg, depth)?;
    close_under_conjugation(&mut reg, alg)?;
    let top = reg.entries().iter().map(|e| e.corep.degree()).max().unwrap_or(0).max(1);
    let t = compute_haar(alg, 2 * top)?;
    Ok((reg, t))
}

fn f_matrix(cfg: &RunConfig) -> Result<Output> {
    let alg = load(&cfg.input)?;
    let (reg, t) = registry_and_haar(&alg, cfg.depth)?;
    let mut h = format!("{}: F-matrices, h((v_ip)* v_jq) = Y_pq F_ij\n", alg.name());
    let mut rows = serde_json::Map::new();
    let mut passed = true;
    for e in reg.entries() {
        let f = block_f_matrix(e, &alg, &t)?;
        let samples = positivity_samples(&f, &cfg.q_samples);
        let positive = samples.iter().all(|s| s.positive);
        passed &= positive;
        let _ = writeln!(h, "{} ({}, dim {}){}: positive {}", e.label, e.name, e.label.dim, if e.is_unitary() { "" } else { " non-unitary" }, mark(positive));
        for i in 0..f.nrows() {
            let row: Vec<String> = (0..f.ncols()).map(|j| f.get(i, j).to_string()).collect();
            let _ = writeln!(h, "  [{}]", row.join(", "));
        }
        rows.insert(
            e.label.to_string(),
            json!({ "name": e.name, "dim": e.label.dim, "form": matrix_json(&e.form), "f": matrix_json(&f), "samples": samples }),
        );
    }
    Ok(Output { human: h, json: Value::Object(rows), passed })
}

fn display(reg: &IrrepRegistry, l: Label) -> String {
    match reg.get(l) {
        Ok(e) if e.name != l.to_string() => format!("{}[{}]", l, e.name),
        _ => l.to_string(),
    }
}

fn fuse(cfg: &RunConfig) -> Result<Output> {
    let alg = load(&cfg.input)?;
    let mut reg = IrrepRegistry::new(&alg)?;
    let rows = reg.fusion_table(&alg, cfg.depth)?;
    let mut h = format!("{}: fusion rules to depth {}\n", alg.name(), cfg.depth);
    let mut passed = true;
    for r in &rows {
        let sum: Vec<String> = r
            .summands
            .iter()
            .map(|s| if s.multiplicity == 1 { display(&reg, s.label) } else { format!("{}·{}", s.multiplicity, display(&reg, s.label)) })
            .chain(r.numeric_dims.iter().map(|d| format!("?d{}", d)))
            .collect();
        passed &= r.numeric_dims.is_empty();
        let _ = writeln!(h, "  {} ⊗ {} = {}", display(&reg, r.left), display(&reg, r.right), sum.join(" ⊕ "));
    }
    let irreps: Vec<Value> = reg.entries().iter().map(|e| json!({ "label": e.label, "name": e.name, "dim": e.label.dim })).collect();
    Ok(Output { human: h, json: json!({ "depth": cfg.depth, "irreps": irreps, "fusion": fusion_json(&rows) }), passed })
}

fn decompose(cfg: &RunConfig, tensor: Option<&str>) -> Result<Output> {
    let alg = load(&cfg.input)?;
    let mut reg = IrrepRegistry::new(&alg)?;
    let lookup = |s: &str, reg: &IrrepRegistry| -> Result<Corep> {
        if let Some(f) = alg.fundamentals().iter().find(|f| f.name() == Some(s)) {
            return Ok(f.clone());
        }
        Ok(reg.find(s)?.corep.clone())
    };
    let factors: Vec<Corep> = match tensor {
        Some(list) => list.split(',').map(|s| lookup(s.trim(), &reg)).collect::<Result<_>>()?,
        None => {
            let f = alg.fundamentals().first().ok_or_else(|| CqgError::NotCorep(format!("{} has no fundamental", alg.name())))?;
            vec![f.clone(), f.clone()]
        }
    };
    let mut v = factors[0].clone();
    for f in &factors[1..] {
        v = v.tensor(f, &alg);
    }
    let d = reg.decompose(&v, factors.len(), &alg)?;
    let passed = d.is_complete() && d.witness_verified && d.end_dim_consistent();
    let parts: Vec<String> = d
        .components
        .iter()
        .map(|c| {
            let name = c.label.map_or(format!("?d{}", c.dim), |l| display(&reg, l));
            if c.multiplicity == 1 {
                name
            } else {
                format!("{}·{}", c.multiplicity, name)
            }
        })
        .collect();
    let h = format!(
        "{}: dim {} = {}\n  dim End = {}, witness verified: {}, exact: {}\n",
        alg.name(),
        d.dim,
        parts.join(" ⊕ "),
        d.end_dim,
        d.witness_verified,
        d.is_exact()
    );
    Ok(Output { human: h, json: serde_json::to_value(&d).expect("decomposition serializes"), passed })
}

/// A dual element with small random Gaussian-integer entries on every block.
fn random_element(ctx: &DualContext, rng: &mut ChaCha8Rng) -> DualElement {
    let mut w = DualElement::zero();
    for b in ctx.blocks() {
        let vals: Vec<Scalar> = (0..b.dim * b.dim)
            .map(|_| {
                let re = Scalar::from_int(rng.gen_range(-3..=3));
                let im = Scalar::from_int(rng.gen_range(-3..=3));
                &re + &(&im * &Scalar::i())
            })
            .collect();
        w.set(b.label, Matrix::from_fn(b.dim, b.dim, |i, j| vals[i * b.dim + j].clone()));
    }
    w
}

const RANDOM_TRIALS: usize = 8;

fn dual(cfg: &RunConfig) -> Result<Output> {
    let alg = load(&cfg.input)?;
    let (reg, t) = registry_and_haar(&alg, cfg.depth)?;
    let ctx = DualContext::new(&reg, &alg, &t)?;
    let pairing = ctx.pairing_failures()?;
    let mut h = format!("{}: dual with {} blocks (seed {})\n", alg.name(), ctx.blocks().len(), cfg.seed);
    let _ = writeln!(h, "  pairing ω_pq(u_rs) = δ: {}", mark(pairing.is_empty()));
    let mut k_ok = true;
    for b in ctx.blocks() {
        let k = ctx.k_matrix(b.label)?;
        k_ok &= k.passed();
        let _ = writeln!(h, "  K for {} (in block {}): κ̂² = Ad K {}", b.label, k.conjugate, mark(k.passed()));
    }
    // Seeded random checks against the defining formulas.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let coefficients: Vec<_> = ctx.blocks().iter().flat_map(|b| ctx.corep(b.label).map(|v| v.entries().to_vec()).unwrap_or_default()).collect();
    let (mut involution, mut star_formula, mut convolution) = (true, true, true);
    for _ in 0..RANDOM_TRIALS {
        let w = random_element(&ctx, &mut rng);
        let z = random_element(&ctx, &mut rng);
        let ws = ctx.star(&w)?;
        involution &= ctx.star(&ws)? == w;
        let wz = ctx.convolve(&w, &z)?;
        for x in &coefficients {
            star_formula &= ctx.pair(&ws, x)? == ctx.star_eval(&w, x)?;
            convolution &= ctx.pair(&wz, x)? == ctx.convolve_eval(&w, &z, x)?;
        }
    }
    let _ = writeln!(h, "  random involution ω** = ω ({} trials): {}", RANDOM_TRIALS, mark(involution));
    let _ = writeln!(h, "  star against conj(ω(κ(x)*)): {}", mark(star_formula));
    let _ = writeln!(h, "  block convolution against (ω⊗ψ)Δ: {}", mark(convolution));
    let passed = pairing.is_empty() && k_ok && involution && star_formula && convolution;
    let mut json = ctx.to_json()?;
    json["seed"] = cfg.seed.into();
    json["pairing_failures"] = json!(pairing);
    json["random_checks"] = json!({ "trials": RANDOM_TRIALS, "involution": involution, "star_formula": star_formula, "convolution": convolution });
    Ok(Output { human: h, json, passed })
}

fn regrep_check(cfg: &RunConfig, opposite: bool) -> Result<Output> {
    let fa = load_finite(&cfg.input)?;
    let u = regular_unitary(&fa, opposite)?;
    let pent = check_pentagon(&u);
    let imp = check_implements(&u, &fa)?;
    let alg = fa.hopf().ok_or_else(|| CqgError::Presentation(format!("{} has no presented view", fa.name())))?;
    let mut reg = IrrepRegistry::new(alg)?;
    let closed = reg.close_finite(alg, fa.dim(), cfg.depth.max(fa.dim()))?;
    let emb = regular_embedding(&fa, &reg)?;
    let passed = u.unitary && pent.holds && imp.passed() && closed && emb.passed();
    let mut h = format!("{}: regular representation on H = L²(A, h), dim {}{}\n", fa.name(), fa.dim(), if opposite { " (opposite)" } else { "" });
    let _ = writeln!(h, "  unitary for the GNS inner product: {}", mark(u.unitary));
    let _ = writeln!(h, "  pentagon on H⊗H⊗H (dim {}): {}", pent.size, mark(pent.holds));
    let _ = writeln!(h, "  Δ(a) = u(a⊗1)u*: {}", mark(imp.failures.is_empty()));
    let _ = writeln!(h, "  slices span A (rank {} of {}): {}", imp.slice_rank, imp.dim, mark(imp.slice_rank == imp.dim && imp.slices_in_algebra));
    let _ = writeln!(h, "  registry closed (Σ dim² = {}): {}", fa.dim(), mark(closed));
    for e in &emb.entries {
        let _ = writeln!(h, "  {} ({}, dim {}) ⊂ u with multiplicity {}", e.label, e.name, e.dim, e.multiplicity);
    }
    let json = json!({
        "unitary": u.to_json(),
        "pentagon": pent,
        "implements": imp,
        "registry_closed": closed,
        "embedding": emb,
    });
    Ok(Output { human: h, json, passed })
}

fn normalize(cfg: &RunConfig, expr: &str) -> Result<Output> {
    let alg = load(&cfg.input)?;
    let p = alg.presentation();
    let x = dsl::parse_poly(p, expr)?;
    p.ensure_certified(x.degree())?;
    let nf = p.fmt_poly(&p.normal_form(&x)?);
    Ok(Output { human: format!("{}\n", nf), json: json!({ "expr": expr, "normal_form": nf }), passed: true })
}

fn axioms_wor1(cfg: &RunConfig) -> Result<Output> {
    let alg = load(&cfg.input)?;
    let mut h = format!("{}: Σ_k κ(u_pk) u_kq = δ_pq = Σ_k u_pk κ(u_kq)\n", alg.name());
    let mut rows = Vec::new();
    let mut passed = true;
    for (k, f) in alg.fundamentals().iter().enumerate() {
        let name = f.name().map_or(format!("u{}", k + 1), str::to_string);
        let r = f.verify_wor1_axiom3(&alg)?;
        passed &= r.passed();
        let _ = writeln!(h, "  {} (dim {}): {}", name, r.dim, mark(r.passed()));
        for e in r.left.iter().chain(&r.right) {
            let _ = writeln!(h, "    ({}, {}): residual {}", e.p + 1, e.q + 1, e.residual);
        }
        rows.push(json!({ "name": name, "report": r }));
    }
    Ok(Output { human: h, json: Value::Array(rows), passed })
}
