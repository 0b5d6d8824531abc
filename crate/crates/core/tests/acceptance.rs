//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rscount::algebra::{is_irreducible, FieldSpec, Poly};
use rscount::census::{census_count, enumeration_size, CensusKind, CensusMethod, DEFAULT_ENUM_CAP};
use rscount::closedform::{rs, rs_gl, rs_sl, rs_sp, rs_symbolic, rs_u, Family, GroupSpec, Parity};
use rscount::dual::{star_conjugate, tilde_conjugate};
use rscount::genfun::{gf_count, verify_lemma, LemmaId};
use rscount::oracle::{oracle_constant_histogram, oracle_count};

struct Outcome {
    pass: bool,
    summary: String,
    notes: Vec<String>,
    /// Whether a FAIL here fails the suite. False only for a reading that is
    /// shown to be unattainable; its replacement check is then required.
    required: bool,
}

impl Outcome {
    fn from_failures(checked: usize, what: &str, failures: Vec<String>) -> Outcome {
        let pass = failures.is_empty();
        let summary = if pass {
            format!("{checked} {what} checked")
        } else {
            format!("{} of {checked} {what} failed; first: {}", failures.len(), failures[0])
        };
        Outcome {
            pass,
            summary,
            notes: failures.into_iter().skip(1).take(5).collect(),
            required: true,
        }
    }
}

fn grid() -> Vec<GroupSpec> {
    let mut g = Vec::new();
    let mut push = |f, n, q| g.push(GroupSpec::new(f, n, q).unwrap());
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=6u32 {
            if q.pow(n) <= 10_000_000 {
                push(Family::Gl, n, q);
                push(Family::Sl, n, q);
            }
        }
    }
    for (q, n_max) in [(2u64, 11u32), (3, 7), (4, 5)] {
        for n in 1..=n_max {
            push(Family::U, n, q);
            push(Family::Su, n, q);
        }
    }
    for q in [2u64, 3, 4, 5] {
        for n in 1..=12u32 {
            if q.pow(2 * n) <= 10_000_000 {
                push(Family::Sp, n, q);
            }
        }
    }
    for (q, m_max) in [(3u64, 10u32), (5, 10), (7, 10), (2, 12), (4, 8)] {
        for m in 2..=m_max {
            if m % 2 == 0 {
                push(Family::SoPlus, m / 2, q);
                push(Family::SoMinus, m / 2, q);
            } else {
                push(Family::SoOdd, (m - 1) / 2, q);
            }
        }
    }
    g
}

fn anchors() -> Vec<String> {
    let mut bad = Vec::new();
    let mut expect = |f, n, q, value: i64| {
        let g = GroupSpec::new(f, n, q).unwrap();
        let got = rs(&g).unwrap();
        if got != BigInt::from(value) {
            bad.push(format!("anchor {g}: expected {value}, got {got}"));
        }
    };
    expect(Family::Gl, 2, 2, 1);
    expect(Family::Gl, 3, 2, 3);
    expect(Family::Su, 2, 3, 1);
    expect(Family::Sl, 2, 3, 1);
    expect(Family::Sp, 1, 3, 1);
    expect(Family::Sp, 2, 3, 3);
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let qi = q as i64;
        expect(Family::Gl, 1, q, qi - 1);
        expect(Family::U, 1, q, qi + 1);
        expect(Family::SoPlus, 1, q, qi - 1);
        expect(Family::SoMinus, 1, q, qi + 1);
        if q % 2 == 1 {
            expect(Family::SoOdd, 1, q, qi);
            expect(Family::SoOdd, 2, q, qi * qi - qi - 1);
            expect(Family::SoPlus, 2, q, qi * qi - 2 * qi + 3);
            expect(Family::SoMinus, 2, q, qi * qi - 1);
            expect(Family::SoPlus, 3, q, qi.pow(3) - qi * qi + 2 * qi - 4);
            expect(Family::SoMinus, 3, q, qi.pow(3) - qi * qi);
        } else {
            for n in 2..=6u32 {
                let s = if n % 2 == 0 { 1 } else { -1 };
                let base = qi.pow(n) - qi.pow(n - 1);
                expect(Family::SoPlus, n, q, base - s * (qi - 1));
                expect(Family::SoMinus, n, q, base + s * (qi - 1));
            }
        }
    }
    bad
}

fn criterion_1() -> Outcome {
    let points = grid();
    let mut failures = anchors();
    for g in &points {
        let formula = rs(g);
        let genfun = gf_count(g);
        let oracle = oracle_count(g, DEFAULT_ENUM_CAP);
        match (formula, genfun, oracle) {
            (Ok(f), Ok(c), Ok(o)) if f == c && f == BigInt::from(o.count) => {}
            (f, c, o) => failures.push(format!(
                "{g}: formula {:?}, genfun {:?}, oracle {:?}",
                f.map(|x| x.to_string()),
                c.map(|x| x.to_string()),
                o.map(|x| x.count)
            )),
        }
    }
    Outcome::from_failures(points.len(), "grid points (formula = genfun = oracle)", failures)
}

fn lemma_plan() -> Vec<(LemmaId, u64, usize)> {
    let mut plan = Vec::new();
    for q in [2, 3, 4, 5, 7, 9] {
        plan.push((LemmaId::Lem1, q, 10));
    }
    for q in [2, 3, 4] {
        plan.push((LemmaId::Lem2, q, 8));
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        plan.push((LemmaId::Lem3, q, 10));
        plan.push((if q % 2 == 0 { LemmaId::Lem5 } else { LemmaId::Lem4 }, q, 10));
    }
    for q in [3, 5] {
        plan.push((LemmaId::OgenoddSum, q, 8));
        plan.push((LemmaId::OgenoddDiff, q, 8));
    }
    for q in [2, 4] {
        plan.push((LemmaId::OgenevenPlus, q, 10));
        plan.push((LemmaId::OgenevenMinus, q, 10));
    }
    for q in [2, 3, 4, 5] {
        for id in [LemmaId::SolvedRSo, LemmaId::SolvedRSoPlus, LemmaId::SolvedRSoMinus] {
            plan.push((id, q, 10));
        }
    }
    plan
}

fn criterion_2() -> Outcome {
    let plan = lemma_plan();
    let mut failures = Vec::new();
    let mut from_formula = 0;
    for &(id, q, t) in &plan {
        match verify_lemma(id, q, t) {
            Ok(r) if r.pass => {
                from_formula += r.census.iter().filter(|c| c.method == CensusMethod::Formula).count();
            }
            Ok(r) => failures.push(format!("{id} q={q} T={t}: first mismatch at u^{}", r.first_mismatch.unwrap())),
            Err(e) => failures.push(format!("{id} q={q} T={t}: {e}")),
        }
    }
    let mut out = Outcome::from_failures(plan.len(), "identities", failures);
    out.notes.push(format!(
        "{from_formula} census exponents above the enumeration budget were taken from the root-count formula"
    ));
    out
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for q in [2u64, 4, 8] {
        for n in 1..=12 {
            checked += 1;
            if rs_sp(n, q) != rs_gl(n, q) {
                failures.push(format!("Sp({},{q}) != GL({n},{q})", 2 * n));
            }
        }
    }
    for q in [2u64, 3, 5] {
        let qb = BigInt::from(q);
        let parity = Parity::of(q);
        for n in 1..=12 {
            let mut cmp = |family: Family, value: BigInt| {
                checked += 1;
                let sym = rs_symbolic(family, n, parity).unwrap();
                if sym.eval(&qb) != value {
                    failures.push(format!("{family} n={n} q={q}: {sym} evaluates to {}, formula {value}", sym.eval(&qb)));
                }
            };
            cmp(Family::Gl, rs_gl(n, q).unwrap());
            cmp(Family::Sl, rs_sl(n, q).unwrap());
            if n >= 2 {
                cmp(Family::U, rs_u(n, q).unwrap());
            }
        }
    }
    Outcome::from_failures(checked, "consistency identities", failures)
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for q in 2..=11u64 {
        for n in 1..=30 {
            for f in Family::ALL {
                checked += 1;
                if let Err(e) = rs(&GroupSpec::new(f, n, q).unwrap()) {
                    failures.push(e.to_string());
                }
            }
        }
    }
    Outcome::from_failures(checked, "closed-form evaluations", failures)
}

fn criterion_5() -> Outcome {
    let mut literal = Vec::new();
    let mut exact = Vec::new();
    let mut checked = 0;
    for q in [2u64, 3, 4, 5, 7] {
        let field = FieldSpec::cached(q).unwrap();
        let minus_one = field.neg(rscount::algebra::Elem::ONE);
        for n in 1..=5usize {
            checked += 1;
            let hist = oracle_constant_histogram(n, q, DEFAULT_ENUM_CAP).unwrap();
            let mut values: Vec<u128> = hist.iter().map(|&(_, c)| c).collect();
            values.sort_unstable();
            values.dedup();
            let gl = rs_gl(n as u32, q).unwrap().to_i128().unwrap();
            let qi = q as i128;
            // Only the quadratic character survives the average over
            // multiplicative characters, and only at even n with q odd.
            let e = if n % 2 == 0 && q % 2 == 1 { 1 - qi } else { 0 };
            for &(a, c) in &hist {
                let signed = if n % 2 == 0 { a } else { field.mul(a, minus_one) };
                let chi = if q % 2 == 0 || field.is_square(signed).unwrap() { 1 } else { -1 };
                let predicted = (gl + chi * e) / (qi - 1);
                if c as i128 != predicted {
                    exact.push(format!("q={q} n={n} a={}: {c} != {predicted}", a.index()));
                }
            }
            if q % 2 == 0 {
                if values.len() != 1 {
                    literal.push(format!("q={q} n={n}: not uniform ({values:?})"));
                }
            } else if values.len() != 2 {
                literal.push(format!("q={q} n={n}: {} distinct value(s) {values:?}", values.len()));
            }
        }
    }
    let mut out = Outcome::from_failures(checked, "histograms under the literal reading (odd q: exactly two values)", literal);
    out.notes.clear();
    if !out.pass {
        out.required = false;
        out.notes.push(
            "unattainable as worded: for odd n the quadratic-character term vanishes and every nonzero constant gets the same count"
                .to_string(),
        );
    }
    if exact.is_empty() {
        out.notes.push(format!(
            "PASS exact prediction: count(a) = (GL_n + chi((-1)^n a) e_n)/(q-1), e_n = 1-q for even n and odd q, 0 otherwise, on all {checked} histograms"
        ));
    } else {
        out.notes.push(format!("FAIL exact prediction: {}", exact[0]));
        out.required = true;
        out.pass = false;
    }
    out
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for q in [2u64, 3, 4, 5, 7] {
        let f = FieldSpec::cached(q).unwrap();
        for d in 1..=4usize {
            for i in 0..q.pow(d as u32) {
                let p = Poly::monic_from_index(&f, d, i);
                if p.constant_term().is_zero() {
                    continue;
                }
                checked += 1;
                let c = star_conjugate(&f, &p).unwrap();
                let irr = is_irreducible(&f, &p).unwrap();
                if star_conjugate(&f, &c).unwrap() != p || c.degree() != p.degree() || is_irreducible(&f, &c).unwrap() != irr {
                    failures.push(format!("* on {p} over GF({q})"));
                }
                if irr && c == p && d > 1 && (d % 2 != 0 || p.constant_term() != rscount::algebra::Elem::ONE) {
                    failures.push(format!("self-conjugate irreducible {p} over GF({q}) has odd degree or constant != 1"));
                }
            }
        }
    }
    for q in [2u64, 3] {
        let f = FieldSpec::cached(q * q).unwrap();
        for d in 1..=3usize {
            for i in 0..(q * q).pow(d as u32) {
                let p = Poly::monic_from_index(&f, d, i);
                if p.constant_term().is_zero() {
                    continue;
                }
                checked += 1;
                let c = tilde_conjugate(&f, q, &p).unwrap();
                let irr = is_irreducible(&f, &p).unwrap();
                if tilde_conjugate(&f, q, &c).unwrap() != p || is_irreducible(&f, &c).unwrap() != irr {
                    failures.push(format!("~ on {p} over GF({})", q * q));
                }
                if irr && c == p && d % 2 == 0 {
                    failures.push(format!("~-self-conjugate irreducible {p} has even degree"));
                }
            }
        }
    }
    let count = |k, q, d, m| census_count(k, q, d, m, DEFAULT_ENUM_CAP).unwrap().count;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for d in 1..=8usize {
            for k in CensusKind::ALL {
                if enumeration_size(k, q, d).unwrap() <= 100_000 {
                    checked += 1;
                    let (e, fm) = (count(k, q, d, CensusMethod::Enumerate), count(k, q, d, CensusMethod::Formula));
                    if e != fm {
                        failures.push(format!("{k}(q={q}, d={d}): enumeration {e}, formula {fm}"));
                    }
                }
            }
            let n = count(CensusKind::N, q, d, CensusMethod::Formula);
            let star = count(CensusKind::NStar, q, d, CensusMethod::Formula) + 2 * count(CensusKind::MStar, q, d, CensusMethod::Formula);
            let sq = count(CensusKind::N, q * q, d, CensusMethod::Formula);
            let tilde = count(CensusKind::NTilde, q, d, CensusMethod::Formula) + 2 * count(CensusKind::MTilde, q, d, CensusMethod::Formula);
            checked += 2;
            if n != star {
                failures.push(format!("N(q={q}, d={d}) = {n} but N* + 2M* = {star}"));
            }
            if sq != tilde {
                failures.push(format!("N(q^2={}, d={d}) = {sq} but N~ + 2M~ = {tilde}", q * q));
            }
            if q.pow(d as u32) <= 100_000 {
                checked += 1;
                let f = FieldSpec::cached(q).unwrap();
                let total: u128 = (1..=d)
                    .filter(|e| d % e == 0)
                    .map(|e| {
                        let all = rscount::census::irreducibles(&f, e, false, DEFAULT_ENUM_CAP).unwrap();
                        e as u128 * all.len() as u128
                    })
                    .sum();
                if total != (q as u128).pow(d as u32) {
                    failures.push(format!("sum of e*I(e) over e | {d} is {total}, not {q}^{d}"));
                }
            }
        }
    }
    Outcome::from_failures(checked, "involution and census cases", failures)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("three-way agreement grid", criterion_1),
        ("lemma verification suite", criterion_2),
        ("symbolic and even-characteristic consistency", criterion_3),
        ("integer-ness of closed forms", criterion_4),
        ("constant-term distribution", criterion_5),
        ("involution and census invariants", criterion_6),
    ];
    let start = Instant::now();
    let mut ok = true;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{}] {title}: {} ({:.1}s)", i + 1, out.summary, t.elapsed().as_secs_f64());
        for note in &out.notes {
            println!("       {note}");
        }
        if !out.pass && out.required {
            ok = false;
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
