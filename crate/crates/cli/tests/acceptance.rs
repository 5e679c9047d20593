//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always show up in `cargo test` output.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use beideal::betti::{
    extremal_corners, hochster_corner, invariants_from_table, BettiTable, Subject,
};
use beideal::closed_form::{
    circ_split_terms, cm_type_closed, extremal_betti_closed, fm_extremal_betti, hvector_fm,
    linear_strand, reg_closed,
};
use beideal::dsl::parse_expr;
use beideal::graph::connected_graphs;
use beideal::groebner::{
    binomial_edge_generators, buchberger, initial_ideal, normal_form, s_polynomial,
};
use beideal::poly::PolyRing;
use beideal::verify::{
    betti_table, hilbert_report, run_invariants, run_oracle, Method, Mode, OracleConfig, Verdict,
};
use beideal::{FamilyExpr, Graph, PrimeField};

type Check = Result<String, String>;

fn expr(text: &str) -> FamilyExpr {
    parse_expr(text).expect("acceptance expressions parse")
}

fn cfg(method: Method, p: u32) -> OracleConfig {
    OracleConfig {
        method,
        ..OracleConfig::default().with_characteristic(p)
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion_1() -> Check {
    let mut parts = Vec::new();
    for (m, want) in [(2, 1), (3, 5)] {
        let g = FamilyExpr::BipartiteFm(m).build().unwrap();
        let (o, dt) = timed(|| run_oracle(&g, &cfg(Method::Koszul, 32003)));
        let o = o.map_err(|e| format!("F_{m}: {e}"))?;
        ensure(o.method == "koszul", format!("F_{m} did not use Koszul"))?;
        ensure(
            o.extremal_betti == Some(want),
            format!("F_{m}: β̂ {:?}, want {want}", o.extremal_betti),
        )?;
        ensure(dt < Duration::from_secs(300), format!("F_{m} took {dt:?}"))?;
        parts.push(format!("F_{m} β̂={want} ({} ms)", dt.as_millis()));
    }
    let g = FamilyExpr::BipartiteFm(4).build().unwrap();
    let (c, dt) = timed(|| {
        let f = PrimeField::default();
        let ring = PolyRing::new(4 * 2, f)?;
        let gb = buchberger(&f, &binomial_edge_generators(&ring, &g));
        hochster_corner(&f, &initial_ideal(ring.nvars(), &gb))
    });
    let c = c.map_err(|e| format!("F_4: {e}"))?;
    ensure(
        c.certified && (c.p, c.p + c.r, c.value) == (7, 10, 14),
        format!(
            "F_4 corner ({}, {}) = {}, certified {}",
            c.p,
            c.p + c.r,
            c.value,
            c.certified
        ),
    )?;
    ensure(dt < Duration::from_secs(1800), format!("F_4 took {dt:?}"))?;
    parts.push(format!(
        "F_4 corner β_{{7,10}}=14 by Hochster ({} ms)",
        dt.as_millis()
    ));
    Ok(parts.join(", "))
}

fn criterion_2() -> Check {
    for m in [2, 3] {
        let g = FamilyExpr::BipartiteFm(m).build().unwrap();
        let o = run_oracle(&g, &cfg(Method::Koszul, 32003)).map_err(|e| e.to_string())?;
        ensure(
            o.reg == Some(3) && o.projdim == Some(2 * m - 1),
            format!("F_{m}: reg {:?}, projdim {:?}", o.reg, o.projdim),
        )?;
    }
    Ok("F_2, F_3: reg 3, projdim 3 and 5".into())
}

/// Oracle and closed form both equal to the expected values.
fn oracle_closed(text: &str, reg: Option<usize>, betti: u64) -> Result<(), String> {
    let e = expr(text);
    let o =
        run_oracle(&e.build().unwrap(), &cfg(Method::Auto, 32003)).map_err(|e| e.to_string())?;
    let closed = extremal_betti_closed(&e).map_err(|e| e.to_string())?;
    ensure(
        o.extremal_betti == Some(betti) && closed == betti,
        format!(
            "{text}: β̂ oracle {:?}, closed {closed}, want {betti}",
            o.extremal_betti
        ),
    )?;
    if let Some(r) = reg {
        let rc = reg_closed(&e).map_err(|e| e.to_string())?;
        ensure(
            o.reg == Some(r) && rc == r,
            format!("{text}: reg oracle {:?}, closed {rc}, want {r}", o.reg),
        )?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    oracle_closed("fan(2; 1)", None, 1)?;
    oracle_closed("fan(3; 1)", None, 2)?;
    oracle_closed("fan(3; 2)", None, 4)?;
    oracle_closed("fan(3; 1, 1)", Some(3), 2)?;
    Ok("β̂ 1, 2, 4 for (m,|W|) = (2,1), (3,1), (3,2); fan(3; 1, 1) reg 3, β̂ 2".into())
}

fn criterion_4() -> Check {
    for m in 2..=5usize {
        let e = FamilyExpr::Complete(m);
        let o = run_oracle(&e.build().unwrap(), &cfg(Method::Koszul, 32003))
            .map_err(|e| e.to_string())?;
        let k = (m - 1) as u64;
        ensure(
            o.extremal_betti == Some(k)
                && o.reg == Some(1)
                && o.projdim == Some(m - 1)
                && o.cm_type == Some(k),
            format!("K_{m}: {o:?}"),
        )?;
        let c = beideal::closed_form::invariant_report(&e);
        ensure(
            c.extremal_betti == Some(k)
                && c.reg == Some(1)
                && c.projdim == Some(m - 1)
                && c.cm_type == Some(k),
            format!("K_{m} closed: {c:?}"),
        )?;
    }
    Ok("K_2..K_5: β̂ = CM-type = projdim = m-1, reg 1".into())
}

struct Corpus {
    graphs: Vec<Graph>,
    koszul: Vec<BettiTable>,
}

fn koszul_tables(graphs: &[Graph], p: u32, threads: usize) -> Vec<BettiTable> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    pool.install(|| {
        graphs
            .iter()
            .map(|g| betti_table(g, &cfg(Method::Koszul, p)).unwrap())
            .collect()
    })
}

fn criterion_5(c: &Corpus) -> Check {
    let mut checked = 0;
    for (g, t) in c.graphs.iter().zip(&c.koszul) {
        for i in 1..=g.vertex_count() {
            let want = linear_strand(g, i);
            ensure(
                t.get(i, i + 1) == want,
                format!("{g:?}: β_{{{i},{}}} = {} vs {want}", i + 1, t.get(i, i + 1)),
            )?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} graphs, {checked} strand entries, no exceptions",
        c.graphs.len()
    ))
}

fn criterion_6() -> Check {
    let k = |t: &str| betti_table(&expr(t).build().unwrap(), &cfg(Method::Koszul, 32003)).unwrap();
    for (a, b) in [("K(2)", "K(2)"), ("K(2)", "K(3)"), ("fan(2; 1)", "K(2)")] {
        let whole = format!("du({a}, {b})");
        let (ta, tb, t) = (k(a), k(b), k(&whole));
        ensure(
            ta.convolve(&tb).unwrap() == t,
            format!("{whole}: table is not the convolution"),
        )?;
        let (ia, ib, i) = (
            invariants_from_table(&ta).unwrap(),
            invariants_from_table(&tb).unwrap(),
            invariants_from_table(&t).unwrap(),
        );
        let prod = ia.corners.unique_value().unwrap() * ib.corners.unique_value().unwrap();
        ensure(
            i.cm_type == ia.cm_type * ib.cm_type,
            format!("{whole}: CM-type"),
        )?;
        ensure(
            i.corners.unique_value() == Some(prod),
            format!("{whole}: β̂"),
        )?;
        let e = expr(&whole);
        ensure(
            extremal_betti_closed(&e).ok() == Some(prod)
                && cm_type_closed(&e).ok().map(|c| c.value) == Some(i.cm_type),
            format!("{whole}: closed product rule"),
        )?;
    }
    Ok("K2+K2, K2+K3, P3+K2: convolution, CM-type and β̂ products".into())
}

fn criterion_7() -> Check {
    for m in [2, 3] {
        let e = FamilyExpr::BipartiteFm(m);
        let r = hilbert_report(&e.build().unwrap(), Some(&e), &OracleConfig::default(), 8)
            .map_err(|e| e.to_string())?;
        let closed = hvector_fm(m).map_err(|e| e.to_string())?;
        ensure(
            closed.h == r.data.h && closed.d == r.data.d,
            format!("F_{m}: h {:?} vs {:?}", closed.h, r.data.h),
        )?;
        ensure(
            r.series_matches,
            format!("F_{m}: Hilbert function vs series"),
        )?;
        let lemma = r.lemma.as_ref().ok_or(format!("F_{m}: no lemma report"))?;
        ensure(
            lemma.abs_matches && lemma.deg_h_equals_reg,
            format!("F_{m}: {lemma:?}"),
        )?;
    }
    Ok("F_2 h = (1,3,3,1), F_3 h = (1,5,9,5); series through degree 8; |lc h| = β_{p,p+r}".into())
}

fn criterion_8(c: &Corpus) -> Check {
    for (g, j) in c.graphs.iter().zip(&c.koszul) {
        let inj = betti_table(g, &cfg(Method::Hochster, 32003)).map_err(|e| e.to_string())?;
        ensure(
            extremal_corners(j) == extremal_corners(&inj),
            format!("{g:?}: corners differ"),
        )?;
    }
    Ok(format!("{} graphs, no exceptions", c.graphs.len()))
}

fn criterion_9() -> Check {
    let r = run_invariants(
        &expr("cone(fan(2; 1), K(2))"),
        Mode::Both,
        &OracleConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let want: BTreeMap<&str, u64> = [
        ("cmType", 5),
        ("extremalBetti", 1),
        ("betaPP2", 4),
        ("reg", 3),
    ]
    .into();
    let mut line = Vec::new();
    for (inv, v) in &want {
        let c = r
            .comparisons
            .iter()
            .find(|c| c.invariant == *inv)
            .ok_or(format!("no comparison for {inv}"))?;
        ensure(
            c.verdict != Verdict::NotComputable,
            format!("{inv}: no definitive verdict"),
        )?;
        ensure(
            c.closed == Some((*v).into()),
            format!("{inv}: closed {:?}, want {v}", c.closed),
        )?;
        line.push(format!("{inv} {}", c.verdict));
    }
    for m in [3, 4] {
        let text = format!("cone(K({}), K(1))", m - 1);
        let r = run_invariants(&expr(&text), Mode::Both, &OracleConfig::default())
            .map_err(|e| e.to_string())?;
        let a = r
            .adjudications
            .first()
            .ok_or(format!("{text}: no adjudication"))?;
        let oracle = a.oracle.ok_or(format!("{text}: no oracle CM-type"))?;
        ensure(
            a.candidates.get("coneFormula") == Some(&(2 * m as u64 - 3))
                && a.candidates.get("decomposition") == Some(&(m as u64 - 1)),
            format!("{text}: candidates {:?}", a.candidates),
        )?;
        line.push(format!(
            "{text}: formula {} vs product {}, oracle {oracle}",
            2 * m - 3,
            m - 1
        ));
    }
    Ok(line.join("; "))
}

fn criterion_10() -> Check {
    let e = expr("circ(Fm(4), Fm(3))");
    let b = extremal_betti_closed(&e).map_err(|e| e.to_string())?;
    let (g2, _) = circ_split_terms(&e).map_err(|e| e.to_string())?;
    let via_lemma = extremal_betti_closed(&g2).map_err(|e| e.to_string())?;
    ensure(
        b == 5 && via_lemma == 5 && fm_extremal_betti(3) * fm_extremal_betti(2) == 5,
        format!("β̂ {b}, via the two-block split {via_lemma}"),
    )?;
    let refusal = cm_type_closed(&e)
        .err()
        .map(|e| e.to_string())
        .unwrap_or_default();
    ensure(
        refusal.contains("29"),
        format!("CM-type not refused: {refusal:?}"),
    )?;
    let mut msg =
        format!("closed form only: β̂ 5 = 5·1 via {g2}, CM-type refused (29 out of reach)");
    let (o, dt) = timed(|| {
        run_oracle(
            &expr("circ(Fm(3), Fm(3))").build().unwrap(),
            &OracleConfig::default(),
        )
    });
    match o {
        Ok(o) if o.extremal_betti == Some(1) => {
            msg += &format!("; stretch F_3∘F_3 corner β̂ 1 ({} ms)", dt.as_millis())
        }
        Ok(o) => msg += &format!("; stretch F_3∘F_3 gave {:?}", o.extremal_betti),
        Err(e) => msg += &format!("; stretch F_3∘F_3 not run: {e}"),
    }
    Ok(msg)
}

fn criterion_11(c: &Corpus) -> Check {
    let f = PrimeField::default();
    for g in &c.graphs {
        let ring = PolyRing::new(g.vertex_count(), f).unwrap();
        let gb = buchberger(&f, &binomial_edge_generators(&ring, g));
        for a in 0..gb.len() {
            for b in a + 1..gb.len() {
                let s = s_polynomial(&f, &gb.elements[a], &gb.elements[b]);
                ensure(
                    normal_form(&f, &s, &gb.elements).is_zero(),
                    format!("{g:?}: S-pair"),
                )?;
            }
        }
        ensure(
            initial_ideal(ring.nvars(), &gb).is_squarefree(),
            format!("{g:?}: in(J) not squarefree"),
        )?;
    }
    let four = koszul_tables(&c.graphs, 32003, 4);
    ensure(four == c.koszul, "tables differ between 1 and 4 threads")?;
    let other = koszul_tables(&c.graphs, 101, 4);
    for ((g, a), b) in c.graphs.iter().zip(&c.koszul).zip(&other) {
        ensure(a == b, format!("{g:?}: p = 101 and p = 32003 differ"))?;
        ensure(a.subject() == Subject::Ideal, "unexpected subject")?;
    }
    Ok(format!(
        "{} graphs: S-pairs, squarefree in(J), 1 vs 4 threads, p = 101 vs 32003",
        c.graphs.len()
    ))
}

fn main() -> ExitCode {
    let graphs: Vec<Graph> = (1..=5).flat_map(connected_graphs).collect();
    let koszul = koszul_tables(&graphs, 32003, 1);
    let corpus = Corpus { graphs, koszul };
    let checks: Vec<(usize, Check)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, criterion_3()),
        (4, criterion_4()),
        (5, criterion_5(&corpus)),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8(&corpus)),
        (9, criterion_9()),
        (10, criterion_10()),
        (11, criterion_11(&corpus)),
    ];
    let mut failed = 0;
    for (n, r) in checks {
        match r {
            Ok(msg) => println!("PASS criterion {n}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n}: {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
