//! The `motifs` subcommands as library functions returning report sections.

use std::ops::Range;
use std::path::PathBuf;

use motif_core::construct::uniform_maximum;
use motif_core::count::JoinPlan;
use motif_core::lp::LpError;
use motif_core::search::{exhaustive_partition, subset_count};
use motif_core::value::rational_string;
use motif_core::*;
use num_bigint::BigUint;
use num_traits::Zero;

use crate::report::{Field, Section};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    SpecFile {
        path: PathBuf,
        source: crate::specfile::SpecFileError,
    },
    #[error("{path}: {source}")]
    PointFile {
        path: PathBuf,
        source: crate::pointfile::PointFileError,
    },
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{source}{hint}")]
    Search { source: SearchError, hint: String },
    #[error(transparent)]
    Starred(#[from] StarredError),
    #[error("{0}")]
    Usage(String),
    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl From<SearchError> for CliError {
    fn from(source: SearchError) -> Self {
        CliError::Search {
            source,
            hint: String::new(),
        }
    }
}

impl From<LpError> for CliError {
    fn from(e: LpError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 3,
            _ => 2,
        }
    }
}

fn fractions(xs: &[Rational]) -> Field {
    Field::list(xs.iter().map(rational_string))
}

fn one_based(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn assignment(v: &[CoordValue]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn points_field(set: &PointSet) -> Field {
    Field::list(set.iter())
}

/// Splits `0..n` into at most `parts` contiguous ranges of similar weight.
fn balanced_ranges(weights: &[u128], parts: usize) -> Vec<Range<usize>> {
    let total: u128 = weights.iter().sum();
    let parts = parts.max(1) as u128;
    let mut out = Vec::new();
    let mut start = 0;
    let mut acc = 0u128;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        let cut = (out.len() as u128 + 1) * total / parts;
        if acc >= cut && i + 1 < weights.len() && (out.len() as u128) + 1 < parts {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    out.push(start..weights.len());
    out
}

/// Join count with the first-row candidates split across `threads` workers.
pub fn count_parallel(
    spec: &MotifSpec,
    set: &PointSet,
    threads: usize,
) -> Result<BigUint, CliError> {
    let plan = JoinPlan::new(spec, set)?;
    let n = plan.first_level_len();
    if threads <= 1 || n < 2 {
        return Ok(plan.count());
    }
    let chunk = n.div_ceil(threads);
    let plan = &plan;
    Ok(std::thread::scope(|s| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|a| s.spawn(move || plan.count_range(a..(a + chunk).min(n))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).sum()
    }))
}

/// [`exhaustive_maximizer`] with the first-index ranges spread over
/// `threads` workers. The merged result does not depend on `threads`.
pub fn exhaustive_parallel(
    spec: &MotifSpec,
    universe: &PointSet,
    r: usize,
    budget: u64,
    threads: usize,
) -> Result<SearchResult, SearchError> {
    let n = universe.len();
    if threads <= 1 || r == 0 || n < 2 {
        return exhaustive_maximizer(spec, universe, r, budget);
    }
    // subsets whose smallest index is h
    let weights: Vec<u128> = (0..n)
        .map(|h| subset_count(n - h - 1, r - 1).map_or(u128::MAX / n as u128, u128::from))
        .collect();
    let ranges = balanced_ranges(&weights, threads);
    let parts: Vec<Result<SearchResult, SearchError>> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|rg| s.spawn(move || exhaustive_partition(spec, universe, r, budget, rg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker"))
            .collect()
    });
    let mut merged: Option<SearchResult> = None;
    for part in parts {
        let part = part?;
        merged = Some(match merged {
            None => part,
            Some(m) => m.merge(part),
        });
    }
    Ok(merged.expect("at least one range"))
}

fn certificate(spec: &MotifSpec) -> Result<DualityCertificate, CliError> {
    let h = build_hypergraph(spec);
    let cert = duality_certificate(&h)?;
    if !cert.transversal.is_feasible(&h) || !cert.matching.is_feasible(&h) {
        return Err(CliError::Invariant("infeasible LP certificate".into()));
    }
    Ok(cert)
}

pub fn analyze(spec: &MotifSpec) -> Result<Section, CliError> {
    let mut out = Section::new();
    out.text("L", spec.tuple_len()).text("p", spec.dim());
    let matrix = build_matrix(spec).to_string();
    out.put("matrix", Field::list(matrix.lines()));
    let class = classify_spec(spec);
    out.text("class", &class);

    let h = build_hypergraph(spec);
    let mut hs = Section::new();
    hs.text("vertices", h.n_vertices())
        .put(
            "edges",
            Field::list(h.edges().iter().map(|e| one_based(&e.vertices))),
        )
        .text("distinct_edges", h.dedup().n_edges());
    out.put("hypergraph", hs.into_field());

    let cert = certificate(spec)?;
    out.text("tau", rational_string(&cert.tau))
        .text("nu", rational_string(&cert.nu))
        .put("transversal", fractions(&cert.transversal.g))
        .put("matching", fractions(&cert.matching.f));
    let (_, balanced) = balanced_matching(&h);
    out.put("balanced_matching", fractions(&balanced.f));
    if !cert.nu.is_zero() {
        out.text("common_denominator", balanced.common_denominator());
    }
    out.text("distinct_rows", distinct_tableau_rows(spec, &balanced));

    if let Some(u) = &class.uniform {
        let mut us = Section::new();
        us.text("n", u.n)
            .put("groups", Field::list(u.groups.iter().map(|g| one_based(g))))
            .text(
                "max_exponent",
                rational_string(&Rational::new(
                    (spec.tuple_len() as i64).into(),
                    (u.n as i64).into(),
                )),
            );
        out.put("uniform", us.into_field());
    }
    if class.single_starred {
        let prof = star_profile(spec)?;
        let th = thresholds(spec.tuple_len());
        let mut ss = Section::new();
        ss.put(
            "star_columns",
            Field::list(prof.star_columns.iter().map(|c| c + 1)),
        )
        .put("alphas", Field::list(&prof.alphas))
        .put(
            "row_star",
            Field::list((0..spec.tuple_len()).map(|j| prof.star_column(j) + 1)),
        )
        .text("k", prof.k())
        .text("constant", rational_string(&prof.constant))
        .text("m1", &th.m1)
        .text("m", &th.m)
        .text("center_bound", th.center_bound(spec.tuple_len()));
        out.put("single_starred", ss.into_field());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    Naive,
    Join,
    Both,
}

fn bound_section(count: &BigUint, r: usize, tau: &Rational) -> Field {
    let rep = motif_core::bound::bound_report(count.clone(), r, tau.clone());
    let mut s = Section::new();
    s.text("tau", rational_string(&rep.tau))
        .text("r", rep.r)
        .flag("holds", rep.holds)
        .flag("tight", rep.tight);
    s.into_field()
}

pub fn count(
    spec: &MotifSpec,
    set: &PointSet,
    engine: Engine,
    threads: usize,
) -> Result<Section, CliError> {
    let mut out = Section::new();
    out.text("r", set.len());
    let naive = match engine {
        Engine::Naive | Engine::Both => Some(count_motifs_naive(spec, set)?),
        Engine::Join => None,
    };
    let join = match engine {
        Engine::Join | Engine::Both => Some(count_parallel(spec, set, threads)?),
        Engine::Naive => None,
    };
    if let Some(n) = &naive {
        out.text("count_naive", n);
    }
    if let Some(j) = &join {
        out.text("count_join", j);
    }
    if let (Some(n), Some(j)) = (&naive, &join) {
        if n != j {
            return Err(CliError::Invariant(format!(
                "engines disagree: naive {n}, join {j}"
            )));
        }
    }
    let c = join.or(naive).expect("some engine ran");
    let (tau, _) = fractional_transversal(&build_hypergraph(spec));
    let bound = bound_section(&c, set.len(), &tau);
    if let Field::Map(kv) = &bound {
        if kv
            .iter()
            .any(|(k, v)| k == "holds" && *v == Field::Bool(false))
        {
            return Err(CliError::Invariant(format!("count {c} exceeds r^tau")));
        }
    }
    out.text("count", &c).put("bound", bound);
    Ok(out)
}

/// Sets up to this size get their motifs counted in construction reports.
pub const COUNT_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructKind {
    Grid { sizes: Vec<usize> },
    Matching { m: u64, max_points: usize },
    Lines { r: usize },
}

pub fn construct(spec: &MotifSpec, kind: &ConstructKind) -> Result<(PointSet, Section), CliError> {
    let mut out = Section::new();
    let (set, guarantee) = match kind {
        ConstructKind::Grid { sizes } => {
            let set = grid_set(spec, sizes)?;
            let n = classify_spec(spec).uniform.expect("grid_set checked").n;
            out.text("kind", "grid").put("sizes", Field::list(sizes));
            let g = uniform_maximum(spec.tuple_len(), n, set.len());
            (set, g)
        }
        ConstructKind::Matching { m, max_points } => {
            let c = matching_construction_limited(spec, *m, *max_points)?;
            out.text("kind", "matching")
                .text("m", m)
                .text("nu", rational_string(&c.nu))
                .put("weights", fractions(&c.matching.f))
                .text("common_denominator", c.d)
                .text("distinct_rows", c.l_prime);
            (c.points, c.guarantee)
        }
        ConstructKind::Lines { r } => {
            let c = single_starred_construction(spec, *r)?;
            out.text("kind", "lines").text("line_length_unit", c.n);
            (c.points, c.guarantee)
        }
    };
    out.text("size", set.len()).text("guarantee", &guarantee);
    if set.len() <= COUNT_LIMIT {
        let c = count_motifs_join(spec, &set)?;
        if c < guarantee {
            return Err(CliError::Invariant(format!(
                "count {c} below guarantee {guarantee}"
            )));
        }
        let (tau, _) = fractional_transversal(&build_hypergraph(spec));
        out.text("count", &c)
            .put("bound", bound_section(&c, set.len(), &tau));
    }
    Ok((set, out))
}

pub fn structure_section(spec: &MotifSpec, set: &PointSet) -> Result<Section, CliError> {
    let rep = structure_report(spec, set)?;
    let mut out = Section::new();
    out.text("r", rep.r)
        .text("centers", rep.n_centers())
        .text("hypercenters", rep.n_hypercenters)
        .flag("unique_center", rep.has_unique_center)
        .flag("unique_hypercenter", rep.has_unique_hypercenter)
        .flag("all_points_in_line", rep.all_points_in_line);
    match &rep.lines {
        Ok(lp) => {
            let mut s = Section::new();
            s.text("center", assignment(&lp.center))
                .put("lines", Field::list(&lp.lines));
            out.put("line_cover", s.into_field());
        }
        Err(why) => {
            out.text("line_cover", format!("none ({why})"));
        }
    }
    let th = thresholds(spec.tuple_len());
    out.flag(
        "center_count_within_bound",
        BigUint::from(rep.n_centers()) <= th.center_bound(spec.tuple_len()),
    );
    out.put(
        "center_list",
        Field::List(
            rep.centers
                .iter()
                .map(|c| {
                    let mut s = Section::new();
                    s.text("v", assignment(&c.assignment))
                        .put("line_counts", Field::list(&c.line_counts))
                        .flag("hypercenter", c.is_hypercenter);
                    s.into_field()
                })
                .collect(),
        ),
    );
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Exhaustive,
    Local,
}

#[derive(Debug, Clone)]
pub struct MaximizeOptions {
    pub side: usize,
    pub r: usize,
    pub mode: Mode,
    pub budget: u64,
    pub seed: u64,
    pub iters: usize,
}

fn budget_hint(n_side: usize, p: usize, r: usize, budget: u64) -> String {
    let fits = |s: usize, r: usize| {
        s.checked_pow(p as u32)
            .and_then(|n| subset_count(n, r))
            .is_some_and(|c| c <= budget)
    };
    let mut hints = Vec::new();
    if let Some(r2) = (0..r).rev().find(|&r2| fits(n_side, r2)) {
        hints.push(format!("--r {r2}"));
    }
    if let Some(s2) = (1..n_side)
        .rev()
        .find(|&s2| s2.pow(p as u32) >= r && fits(s2, r))
    {
        hints.push(format!("--universe {s2}"));
    }
    if hints.is_empty() {
        String::new()
    } else {
        format!("; try {}", hints.join(" or "))
    }
}

/// A uniformly random `r`-subset of `universe`, fixed by `seed`.
pub fn seeded_subset(universe: &PointSet, r: usize, seed: u64) -> PointSet {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, universe.len(), r).into_vec();
    idx.sort_unstable();
    PointSet::from_unique(
        universe.dim(),
        idx.into_iter().map(|i| universe.points()[i].clone()),
    )
}

fn verdict(spec: &MotifSpec, class: &SpecClass, set: &PointSet) -> Result<Section, CliError> {
    let mut s = Section::new();
    if class.uniform.is_some() {
        match is_grid(spec, set)? {
            Some(f) => {
                s.flag("grid", true)
                    .put("factor_sizes", Field::list(f.factors.iter().map(Vec::len)));
            }
            None => {
                s.flag("grid", false);
            }
        }
    }
    if class.single_starred && !set.is_empty() {
        let rep = structure_report(spec, set)?;
        s.text("centers", rep.n_centers())
            .text("hypercenters", rep.n_hypercenters)
            .flag("all_points_in_line", rep.all_points_in_line)
            .flag("line_cover", rep.lines.is_ok());
    }
    Ok(s)
}

pub fn maximize(
    spec: &MotifSpec,
    opts: &MaximizeOptions,
    threads: usize,
) -> Result<(SearchResult, Section), CliError> {
    let universe = motif_core::search::integer_box(spec.dim(), opts.side);
    let res = match opts.mode {
        Mode::Exhaustive => exhaustive_parallel(spec, &universe, opts.r, opts.budget, threads)
            .map_err(|source| {
                let hint = match source {
                    SearchError::BudgetExceeded { .. } => {
                        budget_hint(opts.side, spec.dim(), opts.r, opts.budget)
                    }
                    _ => String::new(),
                };
                CliError::Search { source, hint }
            })?,
        Mode::Local => {
            if opts.r > universe.len() {
                return Err(SearchError::RTooLarge {
                    r: opts.r,
                    universe: universe.len(),
                }
                .into());
            }
            let start = seeded_subset(&universe, opts.r, opts.seed);
            motif_core::search::local_search(spec, &start, opts.iters)?
        }
    };
    if !res.respects_bound() {
        return Err(CliError::Invariant(format!(
            "best count {} exceeds r^tau",
            res.best_count
        )));
    }
    let class = classify_spec(spec);
    let mut out = Section::new();
    out.text(
        "mode",
        match res.mode {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::LocalSearch => "local",
        },
    )
    .text("universe", format!("{}^{}", opts.side, spec.dim()))
    .text("r", res.r)
    .text("subsets_examined", res.subsets_examined)
    .text("best_count", &res.best_count)
    .put("bound", bound_section(&res.best_count, res.r, &res.tau))
    .text("maximizer_count", res.maximizers.len());
    let mut gallery = Vec::new();
    for m in &res.maximizers {
        let mut s = Section::new();
        s.put("points", points_field(m));
        s.0.extend(verdict(spec, &class, m)?.0);
        gallery.push(s.into_field());
    }
    out.put("maximizers", Field::List(gallery));
    Ok((res, out))
}

fn is_square(n: &BigUint) -> bool {
    let root = n.sqrt();
    &(&root * &root) == n
}

/// Reruns the bundled examples and reports the reproduced quantities.
pub fn reproduce(threads: usize) -> Result<Section, CliError> {
    let k4 = crate::fixtures::k4();
    let corner = crate::fixtures::corner();
    let mut out = Section::new();

    let cert = certificate(&k4)?;
    let mut s = Section::new();
    s.text("tau", rational_string(&cert.tau))
        .text("nu", rational_string(&cert.nu))
        .put("transversal", fractions(&cert.transversal.g))
        .put("matching", fractions(&cert.matching.f));
    out.put("k4_duality", s.into_field());

    let mut grids = Vec::new();
    for sizes in [[2, 2, 2], [2, 3, 4], [3, 3, 3]] {
        let set = grid_set(&k4, &sizes)?;
        let c = count_parallel(&k4, &set, threads)?;
        let mut s = Section::new();
        s.put("sizes", Field::list(sizes))
            .text("count", &c)
            .put("bound", bound_section(&c, set.len(), &cert.tau));
        grids.push(s.into_field());
    }
    out.put("k4_grids", Field::List(grids));

    let mut blowups = Vec::new();
    for (name, spec, m) in [("k4", &k4, 2u64), ("k4", &k4, 3), ("corner", &corner, 2)] {
        let (_, mut s) = construct(
            spec,
            &ConstructKind::Matching {
                m,
                max_points: COUNT_LIMIT,
            },
        )?;
        s.0.insert(0, ("spec".into(), Field::text(name)));
        blowups.push(s.into_field());
    }
    out.put("matching_constructions", Field::List(blowups));

    let prof = star_profile(&corner)?;
    let mut unions = Vec::new();
    for r in [6usize, 9, 12, 15] {
        let (set, mut s) = construct(&corner, &ConstructKind::Lines { r })?;
        let c = count_motifs_join(&corner, &set)?;
        let ratio = Rational::new(
            num_bigint::BigInt::from(c),
            num_bigint::BigInt::from(r).pow(3),
        );
        s.text("count_over_r_cubed", rational_string(&ratio))
            .flag("ratio_at_least_constant", ratio >= prof.constant);
        let mut st = structure_section(&corner, &set)?;
        st.0.retain(|(k, _)| k != "center_list");
        s.put("structure", st.into_field());
        unions.push(s.into_field());
    }
    out.put("corner_line_unions", Field::List(unions));

    let cube = motif_core::search::integer_box(3, 2);
    let mut sweep = Vec::new();
    for r in 0..=8 {
        let res = exhaustive_parallel(&k4, &cube, r, motif_core::search::DEFAULT_BUDGET, threads)?;
        let grids = res
            .maximizers
            .iter()
            .filter(|m| matches!(is_grid(&k4, m), Ok(Some(_))))
            .count();
        let mut s = Section::new();
        s.text("r", r)
            .text("best_count", &res.best_count)
            .flag("perfect_square", is_square(&res.best_count))
            .text("maximizers", res.maximizers.len())
            .text("grid_maximizers", grids);
        sweep.push(s.into_field());
    }
    out.put("k4_cube_sweep", Field::List(sweep));
    Ok(out)
}
