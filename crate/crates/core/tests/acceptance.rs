//! Acceptance criteria, one line each. All comparisons are exact; the runtime limits are part of
//! each criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use genus2::algebra::{field, is_prime, Field, FieldElement, Poly};
use genus2::aut::{reduced_aut_group, AutLabel};
use genus2::census::{census, effective_budget, superspecial_census, verify_tables, CensusOptions, NormalForm};
use genus2::curve::{Genus2Curve, MobiusMap};
use genus2::eo::{eo_type, eo_type_of, hasse_witt, lpoly_prank, supersingular_count, supersingular_j_invariants, EoType};
use genus2::igusa::{igusa_invariants, wp_equal, IgusaPoint};
use genus2::strata::gluing::{glue, level2_action, prank_additivity_check, S3};
use genus2::strata::models::{d4_inverse, d4_model, d6_inverse, d6_model};
use genus2::strata::{component_count, dimension_table, stratum_ideal, Stratum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fixture_points() -> Outcome {
    let cases: [(&[i64], &[i64], [i64; 5]); 3] = [
        (&[], &[0, -1, 0, 0, 0, 1], [20, 30, -20, -325, 64]),
        (&[], &[1, 0, 0, 0, 0, 0, 1], [120, 330, -320, -36825, 11664]),
        (&[1], &[0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1]),
    ];
    let mut n = 0;
    for p in [3u64, 7, 11, 13] {
        let f = field(p, 1).map_err(err)?;
        for (i, (g, rhs, want)) in cases.iter().enumerate() {
            if p == 3 && i < 2 {
                continue;
            }
            let c = Genus2Curve::from_i64s(&f, g, rhs).map_err(err)?;
            let got = igusa_invariants(&c).map_err(err)?;
            let want = IgusaPoint::from_i64s(&f, *want).map_err(err)?;
            ensure(wp_equal(&got, &want).map_err(err)?, || format!("p={p}: {} != {}", got.display(), want.display()))?;
            n += 1;
        }
    }
    Ok(format!("{n} fixture evaluations"))
}

fn relation_suite() -> Outcome {
    let mut curves = 0u64;
    for (p, k) in [(3u64, 1usize), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2)] {
        // The census itself rejects any curve failing the relation or J10 != 0 (table route).
        let c = census(p, k, &CensusOptions::default()).map_err(err)?;
        let f = &c.field;
        let q = f.order() as u64;
        // Generic route, every smooth curve: J10 = 2^8 disc(F) for the monic quintic F.
        for n in 0..q * q * q {
            let nf = NormalForm::from_index(f, n);
            if !nf.is_smooth(f) {
                continue;
            }
            let curve = nf.curve(f).map_err(err)?;
            let pt = igusa_invariants(&curve).map_err(err)?;
            let disc = curve.rhs().discriminant().map_err(err)?;
            let render = || format!("F_{q}: {:?}", nf.render(f));
            ensure(pt.check_relation(), || format!("relation fails at {}", render()))?;
            ensure(!pt.j10().is_zero(), || format!("J10 = 0 at {}", render()))?;
            ensure(pt.j10() == f.scale(&disc, 256), || format!("J10 != 2^8 s5 at {}", render()))?;
            curves += 1;
        }
        ensure(curves > 0 && c.smooth > 0, || format!("empty census over F_{q}"))?;
    }
    Ok(format!("{curves} smooth curves over F_3, F_5, F_7, F_9, F_11, F_13, F_25"))
}

fn oracle_equivalence() -> Outcome {
    let check = |c: &Genus2Curve| -> Result<(), String> {
        let hw = eo_type(&hasse_witt(c)).f_rank;
        let lp = lpoly_prank(c).map_err(err)?;
        ensure(hw == lp, || format!("{c:?}: HW p-rank {hw}, L-polynomial p-rank {lp}"))
    };
    let mut exhaustive = 0;
    for p in [3u64, 5, 7] {
        let f = field(p, 1).map_err(err)?;
        for n in 0..p * p * p {
            let nf = NormalForm::from_index(&f, n);
            if nf.is_smooth(&f) {
                check(&nf.curve(&f).map_err(err)?)?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for p in [11u64, 13] {
        let f = field(p, 1).map_err(err)?;
        for _ in 0..10_000 {
            check(&Genus2Curve::random(&f, &mut rng))?;
        }
    }
    Ok(format!("{exhaustive} normal-form curves exhaustively, 20000 random curves over F_11, F_13"))
}

fn empty_cells() -> Outcome {
    let budget = effective_budget(None);
    let mut summary = Vec::new();
    let mut skipped = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        let ks: Vec<usize> = [1usize, 2]
            .into_iter()
            .filter(|&k| {
                let grid = (p as u128).pow(3 * k as u32);
                let ok = grid <= budget as u128;
                if !ok {
                    skipped.push(format!("F_{p}^{k}"));
                }
                ok
            })
            .collect();
        let r = verify_tables(p, &ks, &CensusOptions::default()).map_err(err)?;
        if let Some(v) = r.violations.first() {
            return Err(format!("p={p}: {} ({} points, e.g. {:?})", v.reason, v.points, v.sample));
        }
        for c in &r.cells {
            ensure(c.eo != EoType::P_RANK_ONE || matches!(c.aut, AutLabel::C2 | AutLabel::C2xC2), || {
                format!("p={p}: (1,1) record with label {}", c.aut)
            })?;
        }
        let points: u64 = r.fields.iter().map(|f| f.distinct_points).sum();
        summary.push(format!("p={p}: {points} points"));
    }
    let mut out = summary.join(", ");
    if !skipped.is_empty() {
        out.push_str(&format!("; over budget, not swept: {}", skipped.join(" ")));
    }
    Ok(out)
}

fn superspecial_counts() -> Outcome {
    let mut out = Vec::new();
    let mut caveats = Vec::new();
    for p in [7u64, 11, 13] {
        let r = superspecial_census(p, &CensusOptions::default()).map_err(err)?;
        if let Some(v) = r.violations.first() {
            return Err(format!("p={p}: {}", v.reason));
        }
        let found: BTreeMap<_, _> = r.row_counts(2, EoType::SUPERSPECIAL);
        let parts: Vec<String> = found.iter().map(|(g, n)| format!("{g}={n}")).collect();
        out.push(format!("p={p}: {}", parts.join(" ")));
        caveats.extend(r.checks.iter().filter(|c| !c.passed).map(|c| format!("p={p} {} {}/{}", c.name, c.observed, c.expected)));
    }
    let mut s = out.join(", ");
    if !caveats.is_empty() {
        s.push_str(&format!("; shortfalls (normal form needs rational Weierstrass points): {}", caveats.join(", ")));
    }
    Ok(s)
}

fn supersingular_elliptic() -> Outcome {
    let mut n = 0;
    for p in (7u64..=50).filter(|&p| is_prime(p)) {
        let formula = supersingular_count(p).map_err(err)?;
        let found = supersingular_j_invariants(p).map_err(err)?.len() as u64;
        ensure(formula == found, || format!("p={p}: formula {formula}, enumeration {found}"))?;
        n += 1;
    }
    Ok(format!("{n} primes"))
}

type Family = fn(&Field, &FieldElement) -> genus2::Result<Genus2Curve>;
type Model = fn(&IgusaPoint) -> genus2::Result<Genus2Curve>;
type Inverse = fn(&IgusaPoint) -> genus2::Result<genus2::curve::P1Point>;

fn d4_family(f: &Field, t: &FieldElement) -> genus2::Result<Genus2Curve> {
    Genus2Curve::from_f(Poly::new(f, vec![f.zero(), *t, f.zero(), f.one(), f.zero(), f.one()]))
}

fn d6_family(f: &Field, c: &FieldElement) -> genus2::Result<Genus2Curve> {
    let rhs = Poly::new(f, vec![*c, f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.from_i64(-1)]);
    Genus2Curve::new(Poly::from_i64s(f, &[1, 0, 0, 1]), rhs)
}

fn round_trips() -> Outcome {
    let cases: [(AutLabel, Family, Model, Inverse); 2] =
        [(AutLabel::D4, d4_family, d4_model, d4_inverse), (AutLabel::D6, d6_family, d6_model, d6_inverse)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut singular = 0;
    for p in [7u64, 11, 13, 17] {
        let f = field(p, 2).map_err(err)?;
        for (label, family, model, inverse) in cases {
            let ideal = stratum_ideal(Stratum::Group(label), p).map_err(err)?;
            let mut done = 0;
            while done < 100 {
                let t = f.random(&mut rng);
                let Ok(c) = family(&f, &t) else { continue };
                let pt = igusa_invariants(&c).map_err(err)?;
                let ctx = || format!("{label} p={p} t={}", f.display(&t));
                ensure(ideal.contains(&pt), || format!("{}: family point off the ideal", ctx()))?;
                let m = match model(&pt) {
                    Ok(m) => m,
                    Err(genus2::Error::SingularStratumPoint(_)) => {
                        singular += 1;
                        continue;
                    }
                    Err(e) => return Err(format!("{}: {e}", ctx())),
                };
                let back = igusa_invariants(&m).map_err(err)?;
                ensure(wp_equal(&back, &pt).map_err(err)?, || format!("{}: model has other invariants", ctx()))?;
                ensure(ideal.contains(&back), || format!("{}: model invariants off the ideal", ctx()))?;
                ensure(inverse(&back).map_err(err)? == inverse(&pt).map_err(err)?, || format!("{}: inverse differs", ctx()))?;
                done += 1;
            }
        }
    }
    Ok(format!("800 round trips ({singular} draws on the models' excluded locus redrawn)"))
}

fn gluing_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut n = 0;
    for p in [7u64, 11, 13] {
        let f = field(p, 1).map_err(err)?;
        let mut done = 0;
        while done < 50 {
            let (l1, l2) = (f.element(rng.gen_range(2..p) as u128), f.element(rng.gen_range(2..p) as u128));
            if l1 == l2 {
                continue;
            }
            let ctx = || format!("p={p} λ=({}, {})", f.display(&l1), f.display(&l2));
            let base = igusa_invariants(&glue(&f, &l1, &l2).map_err(err)?).map_err(err)?;
            for tau in S3::ALL {
                let (m1, m2) = (level2_action(tau, &f, &l1).map_err(err)?, level2_action(tau, &f, &l2).map_err(err)?);
                let moved = igusa_invariants(&glue(&f, &m1, &m2).map_err(err)?).map_err(err)?;
                ensure(wp_equal(&base, &moved).map_err(err)?, || format!("{}: {tau} moves the point", ctx()))?;
                let m = level2_action(tau, &f, &l1).map_err(err)?;
                if tau.order() > 1 && m != l1 {
                    let pt = igusa_invariants(&glue(&f, &l1, &m).map_err(err)?).map_err(err)?;
                    let target = if tau.order() == 2 { Stratum::Group(AutLabel::D4) } else { Stratum::Z };
                    ensure(stratum_ideal(target, p).map_err(err)?.contains(&pt), || format!("{}: glue(λ1, {tau} λ1) off {target}", ctx()))?;
                }
            }
            ensure(prank_additivity_check(&f, &l1, &l2).map_err(err)?, || format!("{}: p-rank not additive", ctx()))?;
            done += 1;
            n += 1;
        }
    }
    Ok(format!("{n} pairs"))
}

fn mobius_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [5u64, 7, 11] {
        let f = field(p, 1).map_err(err)?;
        for _ in 0..500 {
            let c = Genus2Curve::random(&f, &mut rng);
            let m = MobiusMap::random(&f, &mut rng);
            let d = c.apply_mobius(&m).map_err(err)?;
            let ctx = || format!("p={p} {c:?}");
            let (a, b) = (igusa_invariants(&c).map_err(err)?, igusa_invariants(&d).map_err(err)?);
            ensure(wp_equal(&a, &b).map_err(err)?, || format!("{}: Igusa point moved", ctx()))?;
            ensure(eo_type_of(&c) == eo_type_of(&d), || format!("{}: EO type moved", ctx()))?;
            let (g, h) = (reduced_aut_group(&c).map_err(err)?.order(), reduced_aut_group(&d).map_err(err)?.order());
            ensure(g == h, || format!("{}: reduced order {g} vs {h}", ctx()))?;
        }
    }
    Ok("1500 coordinate changes".into())
}

fn formula_integrality() -> Outcome {
    let mut cells = 0;
    for p in (7u64..=200).filter(|&p| is_prime(p)) {
        for t in EoType::ALL {
            for g in AutLabel::legal_labels(p) {
                let n = component_count(t, g, p).map_err(err)?;
                let empty = dimension_table(t, g, p).map_err(err)?.is_none();
                ensure((n == 0) == empty, || format!("p={p} {t} x {g}: count {n}, empty {empty}"))?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells at 42 primes"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("fixture points", fixture_points, Duration::from_secs(1)),
        ("relation suite", relation_suite, Duration::from_secs(60)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(600)),
        ("empty-cell check", empty_cells, Duration::from_secs(1800)),
        ("superspecial counts", superspecial_counts, Duration::from_secs(1200)),
        ("supersingular elliptic cross-check", supersingular_elliptic, Duration::from_secs(60)),
        ("parametrization round trips", round_trips, Duration::from_secs(60)),
        ("gluing properties", gluing_properties, Duration::from_secs(120)),
        ("Mobius invariance", mobius_invariance, Duration::from_secs(60)),
        ("formula integrality", formula_integrality, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; exceeded the {limit:?} limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {:<36} {} ({:.1}s, limit {}s): {detail}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
