//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits nonzero if any failed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use knotbound::blanchfield::{blanchfield_table, lambda_pairing, pairing_audit};
use knotbound::bounds::{bounds_report, BoundsOptions, SourcedCertificate, Status};
use knotbound::certificate::{predicted_target_alexander, search_rank_one_certificate, verify_certificate, Certificate};
use knotbound::diag::{diagonalizable_over_z, is_diagonalizing_witness, signed_counts, Decision, Obstruction};
use knotbound::intmat::IntMatrix;
use knotbound::laurent::{laurent_gcd, LaurentPoly};
use knotbound::matrix::LaurentMatrix;
use knotbound::orders::{order_of_presentation, Presentation};
use knotbound::report::{run_report, ReportOptions};
use knotbound::seifert::SeifertMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let expect = [("3_1", "t - 1 + t^-1", -2), ("4_1", "-t + 3 - t^-1", 0)];
    for (name, delta, sigma) in expect {
        let v = knot(name);
        let d = v.alexander_polynomial().map_err(|e| e.to_string())?;
        ensure(d == p(delta), || format!("Δ({name}) = {d}, expected {delta}"))?;
        let oracle = normalize_oracle(&alexander_det_by_interpolation(v.matrix()));
        ensure(d == oracle, || format!("Δ({name}) = {d}, interpolation oracle gives {oracle}"))?;
        let s = v.signature_at_minus_one();
        ensure(s == sigma, || format!("σ({name}) = {s}, expected {sigma}"))?;
        ensure(float_signature(v.matrix()) == sigma, || format!("σ({name}) disagrees with eigenvalue oracle"))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("Δ and σ of 3_1, 4_1 exact in {:?}", start.elapsed()))
}

fn fixture_cert(name: &str) -> SourcedCertificate {
    SourcedCertificate { source: format!("file:{name}.cert"), certificate: cert_text(name).parse().unwrap() }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cases: [(&str, Vec<SourcedCertificate>, bool, usize, (usize, usize)); 3] = [
        ("3_1", vec![], true, 1, (1, 0)),
        ("4_1", vec![], true, 1, (0, 1)),
        ("granny", vec![fixture_cert("granny")], false, 2, (2, 0)),
    ];
    let mut out = Vec::new();
    for (name, certs, search, ua, signed) in cases {
        let opts = BoundsOptions { search, ..BoundsOptions::default() };
        let r = bounds_report(name, &knot(name), &certs, &opts).map_err(|e| e.to_string())?;
        ensure(r.status == Status::Exact && r.lower == ua && r.upper == ua && r.upper_certified, || {
            format!("{name}: {} <= u_a <= {} ({}), expected exactly {ua}", r.lower, r.upper, r.status)
        })?;
        ensure((r.n_plus, r.n_minus) == (Some(signed.0), Some(signed.1)), || {
            format!("{name}: signed counts {:?}, expected {signed:?}", (r.n_plus, r.n_minus))
        })?;
        if name == "granny" {
            ensure(r.nakanishi_lb == 2, || format!("granny Nakanishi bound {}", r.nakanishi_lb))?;
        }
        out.push(format!("{name}={ua}"));
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("u_a {} exact in {:?}", out.join(", "), start.elapsed()))
}

fn criterion_3() -> Outcome {
    let t_minus_one = p("t - 1");
    let mut entries = 0;
    for rec in table() {
        let b = blanchfield_table(&rec.seifert).map_err(|e| format!("{}: {e}", rec.name))?;
        let n = b.size();
        for i in 0..n {
            for j in 0..n {
                ensure(b.table[j][i].residue_equal(&b.table[i][j].conjugate()), || {
                    format!("{}: entry ({i}, {j}) not hermitian", rec.name)
                })?;
                ensure(b.table[i][j].mul_poly(&b.delta).is_zero(), || {
                    format!("{}: Δ does not kill entry ({i}, {j})", rec.name)
                })?;
                entries += 1;
            }
        }
        ensure(pairing_audit(&b).passed(), || format!("{}: audit failed", rec.name))?;
        let g = laurent_gcd(&b.delta, &t_minus_one);
        ensure(g.is_unit(), || format!("{}: gcd(Δ, t - 1) = {g}", rec.name))?;
    }
    Ok(format!("{entries} pairing entries hermitian and Δ-annihilated; gcd(Δ, t-1) ≐ 1 on the table"))
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let trials = 1000;
    for k in 0..trials {
        let r = rng.random_range(1..=2);
        let s = r + rng.random_range(0..=1);
        let c = rng.random_range(1..=2);
        let a = random_matrix(&mut rng, r, s, 0, 2, 3);
        let b = random_matrix(&mut rng, r, c, 0, 2, 3);
        let cm = random_matrix(&mut rng, c, c, 0, 2, 3);
        let full = LaurentMatrix::from_fn(r + c, s + c, |i, j| match (i < r, j < s) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - s).clone(),
            (false, true) => LaurentPoly::zero(),
            (false, false) => cm.get(i - r, j - s).clone(),
        });
        let whole = order_of_presentation(&Presentation::new(full.clone()));
        let det_c = cm.determinant().map_err(|e| e.to_string())?;
        let product = &order_of_presentation(&Presentation::new(a.clone())) * &det_c;
        let agrees = if product.is_zero() { whole.is_zero() } else { whole.is_doteq(&product) };
        ensure(agrees, || format!("trial {k}: order {whole} vs order(A) det(C) = {product}"))?;
        if full.is_square() {
            let det = full.determinant_by_expansion().map_err(|e| e.to_string())?;
            let agrees = if det.is_zero() { whole.is_zero() } else { whole.is_doteq(&det) };
            ensure(agrees, || format!("trial {k}: order {whole} vs det {det}"))?;
        }
        let sq = random_matrix(&mut rng, r + c, r + c, 0, 2, 3);
        let ord = order_of_presentation(&Presentation::new(sq.clone()));
        let det = sq.determinant_by_expansion().map_err(|e| e.to_string())?;
        let agrees = if det.is_zero() { ord.is_zero() } else { ord.is_doteq(&det) };
        ensure(agrees, || format!("trial {k}: square order {ord} vs det {det}"))?;
    }
    Ok(format!("{trials} random block-triangular presentations; order = det on square ones"))
}

/// `(U*)^-1` for a unimodular `U`.
fn inverse_adjoint(u: &LaurentMatrix) -> LaurentMatrix {
    u.hermitian_conjugate().unimodular_inverse().expect("unit determinant")
}

fn criterion_5(passing: &mut Vec<(SeifertMatrix, Certificate)>) -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut bases: Vec<(&str, Certificate)> = ["granny", "square", "5_1"]
        .into_iter()
        .map(|name| (name, cert_text(name).parse().unwrap()))
        .collect();
    for name in ["3_1", "4_1", "5_2"] {
        let c = search_rank_one_certificate(&knot(name), 2, 2).ok_or_else(|| format!("no rank-one certificate for {name}"))?;
        bases.push((name, c));
    }
    let trials = 200;
    for k in 0..trials {
        let (name, base) = &bases[k % bases.len()];
        let v = knot(name);
        let before = verify_certificate(&v, base).map_err(|e| format!("{name} base certificate: {e}"))?;
        let n = base.size();
        let u = random_unimodular(&mut rng, n, 3);
        let a2 = base.a.congruence(&u).map_err(|e| e.to_string())?;
        let s2 = base.witness.mul(&inverse_adjoint(&u)).map_err(|e| e.to_string())?;
        let moved = Certificate::new(a2.clone(), s2, None);
        let after = verify_certificate(&v, &moved).map_err(|e| format!("trial {k} ({name}): transformed certificate: {e}"))?;
        ensure((after.n, after.n_plus, after.n_minus) == (before.n, before.n_plus, before.n_minus), || {
            format!("trial {k}: counts changed")
        })?;
        let us = u.hermitian_conjugate();
        for _ in 0..2 {
            let x = random_matrix(&mut rng, n, 1, -1, 1, 2);
            let y = random_matrix(&mut rng, n, 1, -1, 1, 2);
            let ux = us.mul(&x).unwrap().column(0);
            let uy = us.mul(&y).unwrap().column(0);
            let lhs = lambda_pairing(&a2, &ux, &uy).map_err(|e| e.to_string())?;
            let rhs = lambda_pairing(&base.a, &x.column(0), &y.column(0)).map_err(|e| e.to_string())?;
            ensure(lhs.residue_equal(&rhs), || format!("trial {k}: λ(U*AU)(U*x, U*y) = {lhs}, λ(A)(x, y) = {rhs}"))?;
        }
        passing.push((v, moved));
    }
    Ok(format!("{trials} random unit-determinant transforms preserve verification and λ residues"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let yes = IntMatrix::from_rows(&[[0, 1], [1, 1]]);
    let v = diagonalizable_over_z(&yes, 10).map_err(|e| e.to_string())?;
    ensure(v.decision == Decision::Yes, || "[[0,1],[1,1]] not diagonalized".into())?;
    let w = v.witness.clone().unwrap();
    ensure(is_diagonalizing_witness(&yes, &w), || "witness fails re-verification".into())?;
    let d = w.mul(&yes).unwrap().mul(&w.transpose()).unwrap();
    ensure(d.is_diagonal(), || format!("P Q P^T = {d} is not diagonal"))?;
    checked += 1;

    let mut e8 = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        e8[(i, i)] = BigInt::from(2);
    }
    for (i, j) in [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)] {
        e8[(i, j)] = BigInt::from(-1);
        e8[(j, i)] = BigInt::from(-1);
    }
    let hyperbolic = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
    for (label, q) in [("[[0,1],[1,0]]", &hyperbolic), ("E8", &e8)] {
        let v = diagonalizable_over_z(q, 10).map_err(|e| e.to_string())?;
        ensure(v.decision == Decision::No && v.obstruction == Some(Obstruction::EvenForm), || {
            format!("{label}: {:?}", v.decision)
        })?;
        checked += 1;
    }
    let e8_plus_one = IntMatrix::block_diagonal(&[&e8, &IntMatrix::identity(1)]);
    let v = diagonalizable_over_z(&e8_plus_one, 10).map_err(|e| e.to_string())?;
    ensure(v.decision == Decision::No && v.obstruction == Some(Obstruction::DefiniteNoUnitSplitting), || {
        format!("E8 + [1]: {:?} {:?}", v.decision, v.obstruction)
    })?;
    checked += 1;

    // every yes on a further corpus re-verifies
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..50 {
        let n = rng.random_range(1..=4);
        let diag: Vec<i64> = (0..n).map(|_| if rng.random_range(0..2) == 0 { 1 } else { -1 }).collect();
        let dq = IntMatrix::from_fn(n, n, |i, j| BigInt::from(if i == j { diag[i] } else { 0 }));
        let g = IntMatrix::from_fn(n, n, |i, j| BigInt::from(match i.cmp(&j) {
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Less => rng.random_range(-2..=2),
            std::cmp::Ordering::Greater => 0,
        }));
        let q = g.transpose().mul(&dq).unwrap().mul(&g).unwrap();
        let v = diagonalizable_over_z(&q, 10).map_err(|e| e.to_string())?;
        ensure(v.decision == Decision::Yes, || format!("congruent to diag(±1) but got {:?}: {q}", v.decision))?;
        ensure(is_diagonalizing_witness(&q, v.witness.as_ref().unwrap()), || format!("bad witness for {q}"))?;
        let (np, nm) = signed_counts(&v, &q).map_err(|e| e.to_string())?;
        let sig = q.signature().unwrap();
        ensure(np + nm == n && np as i64 - nm as i64 == sig, || format!("counts ({np}, {nm}) vs σ {sig}"))?;
        checked += 1;
    }
    Ok(format!("{checked} decisions correct; every yes-witness re-verified"))
}

/// `±r^k` for some `k`.
fn is_signed_power(x: &BigRational, r: i64) -> bool {
    let mut y = x.abs();
    let r = BigRational::from_integer(BigInt::from(r));
    while y > BigRational::one() {
        y /= &r;
    }
    while y < BigRational::one() && !y.is_zero() {
        y *= &r;
    }
    y.is_one()
}

fn criterion_7(passing: &[(SeifertMatrix, Certificate)]) -> Outcome {
    for (k, (v, c)) in passing.iter().enumerate() {
        let delta = v.alexander_polynomial().map_err(|e| e.to_string())?;
        let det = c.a.determinant().map_err(|e| e.to_string())?;
        ensure(det.is_doteq(&delta), || format!("certificate {k}: det(A) = {det}, Δ = {delta}"))?;
        let target = predicted_target_alexander(&c.a, &delta).map_err(|e| e.to_string())?;
        let target = target.ok_or_else(|| format!("certificate {k}: predicted target is not a Laurent polynomial"))?;
        ensure(target.is_doteq(&LaurentPoly::one()), || format!("certificate {k}: predicted target {target}"))?;
        for r in [2i64, 3] {
            let x = BigRational::from_integer(BigInt::from(r));
            let quotient = delta.evaluate(&x).unwrap() / det.evaluate(&x).unwrap();
            ensure(is_signed_power(&quotient, r), || format!("certificate {k}: Δ/det(A) at t = {r} is {quotient}"))?;
        }
    }
    Ok(format!("{} passing certificates satisfy det(A) ≐ Δ and target ≐ 1", passing.len()))
}

fn criterion_8() -> Outcome {
    let recs = table();
    let dir = std::path::PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/certs"));
    let run = |threads| {
        let opts = ReportOptions { certs_dir: Some(dir.clone()), threads: Some(threads), ..ReportOptions::default() };
        run_report(&recs, &opts).map(|d| d.to_json()).map_err(|e| e.to_string())
    };
    let one = run(1)?;
    let four = run(4)?;
    let again = run(4)?;
    ensure(one == four, || "1-thread and 4-thread reports differ".into())?;
    ensure(four == again, || "consecutive runs differ".into())?;
    Ok(format!("{}-byte report identical across thread counts and runs", one.len()))
}

fn main() -> ExitCode {
    let mut passing: Vec<(SeifertMatrix, Certificate)> = Vec::new();
    for rec in table() {
        let opts = BoundsOptions::default();
        let certs: Vec<SourcedCertificate> = match rec.name.as_str() {
            "granny" | "square" | "5_1" => vec![fixture_cert(&rec.name)],
            _ => vec![],
        };
        if let Ok(r) = bounds_report(&rec.name, &rec.seifert, &certs, &opts) {
            if let Some(text) = r.certificate {
                passing.push((rec.seifert.clone(), text.parse().unwrap()));
            }
        }
    }
    let c5 = criterion_5(&mut passing);
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        c5,
        criterion_6(),
        criterion_7(&passing),
        criterion_8(),
    ];
    let mut ok = true;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("PASS criterion {}: {msg}", i + 1),
            Err(msg) => {
                ok = false;
                println!("FAIL criterion {}: {msg}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
