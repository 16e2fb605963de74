//! Exhaustive census of `y^2 = x(x-1)(x^3 + a2 x^2 + a1 x + a0)` over `F_q`, deduplicated by
//! Igusa point and compared with the dimension and count tables.

mod fast;
mod normal_form_data;
mod report;

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{field, Field, FieldElement};
use crate::aut::{aut_classify, AutLabel};
use crate::curve::Genus2Curve;
use crate::eo::{eo_type, hasse_witt, EoType, Matrix2};
use crate::error::{Error, Result};
use crate::igusa::{igusa_invariants, IgusaKey, IgusaPoint};
use crate::strata::{stratum_membership, Stratum};

use fast::{CompactKey, Evaluator};

pub use report::{
    empty_cell_reason, superspecial_census, verify_counts, verify_tables, write_atomic, write_census, CellReport, CensusReport, Check,
    FieldSummary, Violation,
};

/// Environment variable that overrides any budget passed in code or on the command line.
pub const BUDGET_ENV: &str = "GENUS2_BUDGET";

/// Default limit on grid points per sweep. `F_169` (about 4.8 million points) fits.
pub const DEFAULT_BUDGET: u64 = 6_000_000;

/// Rough single-core throughput of the filter stage, used only for the estimate in refusals.
const CURVES_PER_SECOND: u64 = 400_000;

/// The budget in force: `GENUS2_BUDGET` if set and valid, else `requested`, else the default.
pub fn effective_budget(requested: Option<u64>) -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .or(requested)
        .unwrap_or(DEFAULT_BUDGET)
}

/// Parameters `(a0, a1, a2)` of the normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub a: [FieldElement; 3],
}

impl NormalForm {
    pub fn new(a0: FieldElement, a1: FieldElement, a2: FieldElement) -> Self {
        NormalForm { a: [a0, a1, a2] }
    }

    /// The grid point with index `n` in the sweep order (`a0` slowest).
    pub fn from_index(f: &Field, n: u64) -> Self {
        let q = f.order() as u64;
        NormalForm::new(f.element((n / (q * q)) as u128), f.element((n / q % q) as u128), f.element((n % q) as u128))
    }

    pub fn index(&self, f: &Field) -> u64 {
        let q = f.order() as u64;
        let [a0, a1, a2] = self.a.map(|x| f.index(&x) as u64);
        (a0 * q + a1) * q + a2
    }

    /// Coefficients of `x(x-1)(x^3 + a2 x^2 + a1 x + a0)`, constant term first.
    pub fn quintic(&self, f: &Field) -> [FieldElement; 6] {
        let [a0, a1, a2] = self.a;
        // x(x-1) c(x) = x^2 c(x) - x c(x)
        [
            f.zero(),
            f.neg(&a0),
            f.sub(&a0, &a1),
            f.sub(&a1, &a2),
            f.sub(&a2, &f.one()),
            f.one(),
        ]
    }

    /// The quintic is squarefree: the cubic has no root at 0 or 1 and a nonzero discriminant.
    pub fn is_smooth(&self, f: &Field) -> bool {
        let [a0, a1, a2] = self.a;
        if a0.is_zero() || f.add(&f.add(&f.one(), &a2), &f.add(&a1, &a0)).is_zero() {
            return false;
        }
        // disc(x^3 + b x^2 + c x + d) = b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd
        let (b, c, d) = (a2, a1, a0);
        let bc = f.mul(&b, &c);
        let terms = [
            f.sqr(&bc),
            f.scale(&f.mul(&f.sqr(&c), &c), 4),
            f.scale(&f.mul(&f.mul(&f.sqr(&b), &b), &d), 4),
            f.scale(&f.sqr(&d), 27),
            f.scale(&f.mul(&bc, &d), 18),
        ];
        let disc = f.add(&f.sub(&f.sub(&f.sub(&terms[0], &terms[1]), &terms[2]), &terms[3]), &terms[4]);
        !disc.is_zero()
    }

    pub fn curve(&self, f: &Field) -> Result<Genus2Curve> {
        Genus2Curve::new(crate::algebra::Poly::zero(f), crate::algebra::Poly::new(f, self.quintic(f).to_vec()))
    }

    pub fn render(&self, f: &Field) -> [String; 3] {
        self.a.map(|x| f.display(&x))
    }
}

/// Which Ekedahl–Oort types survive the Hasse–Witt filter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum EoFilter {
    #[default]
    All,
    Only(EoType),
}

impl EoFilter {
    pub fn accepts(&self, t: EoType) -> bool {
        match self {
            EoFilter::All => true,
            EoFilter::Only(u) => *u == t,
        }
    }
}

/// One classified curve, or one distinct Igusa point with its first representative.
#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub field: Field,
    pub form: NormalForm,
    pub point: IgusaPoint,
    pub key: IgusaKey,
    pub eo: EoType,
    pub aut: AutLabel,
    pub reduced_order: usize,
    pub strata: BTreeSet<Stratum>,
    /// Grid points with this Igusa point (1 for per-curve records).
    pub curves: u64,
}

pub const CSV_HEADER: &str = "p,k,a0,a1,a2,igusa_key,f,a,aut,strata";

impl CensusRecord {
    pub fn csv_row(&self) -> String {
        let f = &self.field;
        let [a0, a1, a2] = self.form.render(f);
        format!(
            "{},{},{a0},{a1},{a2},{},{},{},{},{}",
            f.p(),
            f.degree(),
            self.key.render(f),
            self.eo.f_rank,
            self.eo.a_rank,
            self.aut,
            crate::strata::render_strata(&self.strata)
        )
    }
}

/// Everything the census records about a single curve.
#[derive(Clone, Debug)]
pub struct Classification {
    pub point: IgusaPoint,
    pub hasse_witt: Matrix2,
    pub eo: EoType,
    pub reduced_order: usize,
    pub aut: AutLabel,
    pub strata: BTreeSet<Stratum>,
}

/// Invariants, EO type, automorphism group and strata of `c`, by the generic routes.
pub fn classify_curve(c: &Genus2Curve) -> Result<Classification> {
    let point = igusa_invariants(c)?;
    let hw = hasse_witt(c);
    let (reduced_order, aut, strata) = point_strata(c, &point)?;
    Ok(Classification { eo: eo_type(&hw), hasse_witt: hw, point, reduced_order, aut, strata })
}

/// Automorphism group and strata of a curve with Igusa point `point`. `W_{>=C2xC2}` is read off
/// the group: it holds exactly when the reduced order is even.
fn point_strata(c: &Genus2Curve, point: &IgusaPoint) -> Result<(usize, AutLabel, BTreeSet<Stratum>)> {
    let (n, label) = aut_classify(c)?;
    let mut strata = stratum_membership(point)?;
    if n % 2 == 0 {
        strata.insert(Stratum::Group(AutLabel::C2xC2));
    }
    Ok((n, label, strata))
}

fn classify_point(f: &Field, form: &NormalForm, point: &IgusaPoint) -> Result<(usize, AutLabel, BTreeSet<Stratum>)> {
    point_strata(&form.curve(f)?, point)
}

/// Hasse–Witt filter then invariants; `None` for singular curves and filtered-out types.
fn examine(ev: &Evaluator, a: &[u32; 3], filter: EoFilter) -> Result<Option<(EoType, [u32; 5])>> {
    if !ev.is_smooth(a) {
        return Ok(None);
    }
    let hw = ev.hasse_witt(&ev.quintic(a));
    let t = if ev.det(&hw) != crate::algebra::SmallField::ZERO { EoType::ORDINARY } else { eo_type(&ev.matrix(&hw)) };
    if !filter.accepts(t) {
        return Ok(None);
    }
    let j = ev.coords(a);
    if !ev.relation_holds(&j) {
        return Err(Error::Internal(format!("relation fails at {:?}", ev.to_form(a).render(ev.field()))));
    }
    if j[4] == crate::algebra::SmallField::ZERO {
        return Err(Error::Internal(format!("J10 vanishes on smooth curve {:?}", ev.to_form(a).render(ev.field()))));
    }
    Ok(Some((t, j)))
}

fn check_sweep(f: &Field, budget: u64) -> Result<u64> {
    if f.p() < 3 {
        return Err(Error::CharacteristicTwo);
    }
    let q = f.order();
    let grid = q.checked_pow(3).filter(|&g| g <= u64::MAX as u128).map(|g| g as u64).unwrap_or(u64::MAX);
    if grid > budget {
        return Err(Error::BudgetExceeded { required: grid, budget });
    }
    Ok(grid)
}

/// Estimated single-core seconds for a sweep over `F_q`.
pub fn estimated_seconds(q: u128) -> u64 {
    (q.saturating_pow(3) / CURVES_PER_SECOND as u128).min(u64::MAX as u128) as u64
}

/// Lazily classifies every smooth curve of the grid that passes `filter`, in sweep order.
/// Automorphism data is memoized per Igusa point.
pub fn enumerate_curves(f: &Field, filter: EoFilter, budget: u64) -> Result<impl Iterator<Item = Result<CensusRecord>>> {
    let grid = check_sweep(f, budget)?;
    let ev = Evaluator::new(f)?;
    let mut memo: HashMap<CompactKey, (IgusaKey, usize, AutLabel, BTreeSet<Stratum>)> = HashMap::new();
    Ok((0..grid).filter_map(move |n| {
        let a = ev.form(n);
        let f = ev.field().clone();
        let mut record = || -> Result<Option<CensusRecord>> {
            let Some((eo, j)) = examine(&ev, &a, filter)? else { return Ok(None) };
            let form = ev.to_form(&a);
            let point = ev.point(&j)?;
            let ck = ev.key(&j)?;
            let (key, reduced_order, aut, strata) = match memo.get(&ck) {
                Some(c) => c.clone(),
                None => {
                    let (n, l, s) = classify_point(&f, &form, &point)?;
                    let c = (point.key(), n, l, s);
                    memo.insert(ck, c.clone());
                    c
                }
            };
            Ok(Some(CensusRecord { field: f.clone(), form, point, key, eo, aut, reduced_order, strata, curves: 1 }))
        };
        record().transpose()
    }))
}

/// Sweep options.
#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub filter: EoFilter,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    /// Grid-point budget before `GENUS2_BUDGET` is applied.
    pub budget: Option<u64>,
}

/// Result of a deduplicated sweep over one field.
#[derive(Clone, Debug)]
pub struct Census {
    pub field: Field,
    pub filter: EoFilter,
    pub grid: u64,
    pub smooth: u64,
    /// Smooth curves that passed the filter.
    pub survivors: u64,
    /// One record per Igusa point, ordered by the grid index of its first representative.
    pub records: Vec<CensusRecord>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Copy)]
struct Seen {
    first: u64,
    eo: EoType,
    curves: u64,
}

#[derive(Default)]
struct Chunk {
    smooth: u64,
    survivors: u64,
    seen: HashMap<CompactKey, Seen>,
}

impl Chunk {
    fn merge(mut self, other: Chunk) -> Result<Chunk> {
        self.smooth += other.smooth;
        self.survivors += other.survivors;
        for (k, s) in other.seen {
            match self.seen.get_mut(&k) {
                Some(t) => {
                    if t.eo != s.eo {
                        return Err(Error::Internal(format!("Igusa point has two EO types {} and {}", t.eo, s.eo)));
                    }
                    t.first = t.first.min(s.first);
                    t.curves += s.curves;
                }
                None => {
                    self.seen.insert(k, s);
                }
            }
        }
        Ok(self)
    }
}

fn sweep_rows(ev: &Evaluator, filter: EoFilter, rows: std::ops::Range<u64>) -> Result<Chunk> {
    let q = ev.field().order() as u64;
    let mut chunk = Chunk::default();
    for n in rows.start * q * q..rows.end * q * q {
        let a = ev.form(n);
        if ev.is_smooth(&a) {
            chunk.smooth += 1;
        }
        let Some((eo, j)) = examine(ev, &a, filter)? else { continue };
        chunk.survivors += 1;
        let e = chunk.seen.entry(ev.key(&j)?).or_insert(Seen { first: n, eo, curves: 0 });
        if e.eo != eo {
            return Err(Error::Internal(format!("Igusa point has two EO types {} and {}", e.eo, eo)));
        }
        e.curves += 1;
    }
    Ok(chunk)
}

fn with_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Sweeps the whole grid over `F_q`, deduplicates by Igusa point and classifies each point once.
/// The output does not depend on the number of workers.
pub fn run_census(f: &Field, opts: &CensusOptions) -> Result<Census> {
    let start = Instant::now();
    let grid = check_sweep(f, effective_budget(opts.budget))?;
    let ev = Evaluator::new(f)?;
    let q = f.order() as u64;
    // Blocks of a0 rows of roughly 20k grid points each.
    let rows_per_block = (20_000 / (q * q)).max(1);
    let blocks: Vec<std::ops::Range<u64>> =
        (0..q).step_by(rows_per_block as usize).map(|s| s..(s + rows_per_block).min(q)).collect();
    let filter = opts.filter;
    let (chunk, records) = with_pool(opts.workers, || -> Result<(Chunk, Vec<CensusRecord>)> {
        let chunks: Vec<Chunk> = blocks.into_par_iter().map(|r| sweep_rows(&ev, filter, r)).collect::<Result<_>>()?;
        let mut total = Chunk::default();
        for c in chunks {
            total = total.merge(c)?;
        }
        let mut reps: Vec<Seen> = total.seen.values().copied().collect();
        reps.sort_by_key(|r| r.first);
        let records = reps
            .into_par_iter()
            .map(|seen| {
                let a = ev.form(seen.first);
                let form = ev.to_form(&a);
                let point = ev.point(&ev.coords(&a))?;
                let key = point.key();
                let (reduced_order, aut, strata) = classify_point(f, &form, &point)?;
                Ok(CensusRecord { field: f.clone(), form, point, key, eo: seen.eo, aut, reduced_order, strata, curves: seen.curves })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((total, records))
    })??;
    Ok(Census {
        field: f.clone(),
        filter,
        grid,
        smooth: chunk.smooth,
        survivors: chunk.survivors,
        records,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// [`run_census`] over `F_{p^k}`.
pub fn census(p: u64, k: usize, opts: &CensusOptions) -> Result<Census> {
    run_census(&field(p, k)?, opts)
}

impl Census {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.records.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::prime_field;
    use crate::igusa::normal_form_invariants_by_roots;

    #[test]
    fn index_round_trip() {
        let f = field(3, 2).unwrap();
        for n in [0u64, 1, 80, 81, 728] {
            assert_eq!(NormalForm::from_index(&f, n).index(&f), n);
        }
    }

    #[test]
    fn smoothness_matches_discriminant() {
        for (p, k) in [(3u64, 1usize), (5, 1), (3, 2), (7, 1)] {
            let f = field(p, k).unwrap();
            let q = f.order() as u64;
            for n in 0..q * q * q {
                let nf = NormalForm::from_index(&f, n);
                let smooth = nf.curve(&f).is_ok();
                assert_eq!(nf.is_smooth(&f), smooth, "p={p} k={k} {:?}", nf.render(&f));
            }
        }
    }

    #[test]
    fn polynomial_invariants_match_roots() {
        for (p, k) in [(3u64, 1usize), (3, 2), (5, 1), (7, 1), (11, 1), (5, 2)] {
            let f = field(p, k).unwrap();
            let ev = Evaluator::new(&f).unwrap();
            let q = f.order() as u64;
            let step = (q * q * q / 300).max(1);
            for n in (0..q * q * q).step_by(step as usize) {
                let nf = NormalForm::from_index(&f, n);
                if !nf.is_smooth(&f) {
                    continue;
                }
                let [a0, a1, a2] = nf.a;
                let by_roots = normal_form_invariants_by_roots(&f, a0, a1, a2).unwrap();
                let j = ev.coords(&ev.form(n));
                assert_eq!(ev.point(&j).unwrap().key(), by_roots.key(), "p={p} k={k} {:?}", nf.render(&f));
            }
        }
    }

    #[test]
    fn census_is_independent_of_workers() {
        let f = prime_field(7).unwrap();
        let a = run_census(&f, &CensusOptions { workers: Some(1), ..Default::default() }).unwrap();
        let b = run_census(&f, &CensusOptions { workers: Some(3), ..Default::default() }).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.records.iter().map(|r| r.curves).sum::<u64>(), a.survivors);
    }

    #[test]
    fn enumeration_agrees_with_sweep() {
        let f = prime_field(5).unwrap();
        let per_curve: Vec<CensusRecord> = enumerate_curves(&f, EoFilter::All, 1000).unwrap().collect::<Result<_>>().unwrap();
        let c = run_census(&f, &CensusOptions::default()).unwrap();
        assert_eq!(per_curve.len() as u64, c.survivors);
        let keys: BTreeSet<_> = per_curve.iter().map(|r| r.key).collect();
        assert_eq!(keys.len(), c.records.len());
    }

    #[test]
    fn budget_is_enforced() {
        let f = prime_field(11).unwrap();
        assert!(matches!(enumerate_curves(&f, EoFilter::All, 100), Err(Error::BudgetExceeded { required: 1331, budget: 100 })));
    }
}
