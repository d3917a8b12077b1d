//! Command handlers. Each handler fills a [`Report`]; errors are mapped to
//! exit codes in one place.

use std::fs;
use std::path::Path;

use clap::ValueEnum;
use num_rational::BigRational;
use sha2::{Digest, Sha256};
use shadowlab::constructions::{self, Construction, Expectation};
use shadowlab::entropy::{self, CoverSpec};
use shadowlab::forbidding::{
    self, AxiomCap, AxiomReport, AxiomViolationKind, Element, ForbiddingSystem, LinearDependence, Repeats,
};
use shadowlab::hypergraph::{self, ColoredHypergraph};
use shadowlab::qlinalg::{self, SubspaceFamily};
use shadowlab::search::{self, Problem, SearchOptions, SearchResult};
use shadowlab::{BoundReport, Error, Result, SetFamily};

use crate::caps::Caps;
use crate::io;
use crate::report::Report;
use crate::{
    Cli, Command, ConstructArgs, ConstructionName, CountArgs, CountKind, EntropyArgs, FamilyArgs, ForbiddingArgs,
    Format, KappaArgs, PartialShadowArgs, ProbeProblem, SearchArgs, SearchKind, SystemKind, WeightedArgs,
    EXIT_CAPACITY, EXIT_INVALID, EXIT_VIOLATION,
};

/// Samples used when exhaustive axiom verification exceeds its cap.
const FALLBACK_SPOT_SAMPLES: u64 = 10_000;

struct Ctx {
    caps: Caps,
    seed: u64,
    hasher: Option<Sha256>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        self.hasher.get_or_insert_with(Sha256::new).update(&bytes);
        String::from_utf8(bytes).map_err(|_| Error::Invalid(format!("{} is not UTF-8", path.display())))
    }

    fn hypergraph(&mut self, path: &Path) -> Result<ColoredHypergraph> {
        io::parse_hypergraph(&self.read(path)?)?.build()
    }

    fn set_family(&mut self, path: &Path) -> Result<SetFamily> {
        io::parse_set_family(&self.read(path)?)
    }

    fn subspace_family(&mut self, path: &Path) -> Result<SubspaceFamily> {
        io::parse_subspace_family(&self.read(path)?)
    }
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

pub(crate) fn execute(cli: &Cli, caps: Caps, echo: Vec<String>) -> Report {
    let mut report = Report::new(echo);
    let mut ctx = Ctx {
        caps,
        seed: cli.seed,
        hasher: None,
    };
    let result = dispatch(&cli.command, &mut ctx, &mut report);
    report.input_digest = ctx.hasher.map(|h| format!("sha256:{}", hex::encode(h.finalize())));
    match result {
        Ok(()) if report.has_violation() => {
            report.status = "violation".into();
            report.exit_code = EXIT_VIOLATION;
            report.message = Some("a proven bound failed: this is a bug or a counterexample".into());
        }
        Ok(()) => {}
        Err(e) => {
            report.status = "error".into();
            report.exit_code = match e {
                Error::Capacity { .. } => EXIT_CAPACITY,
                _ => EXIT_INVALID,
            };
            report.message = Some(e.to_string());
        }
    }
    report
}

fn dispatch(command: &Command, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    match command {
        Command::Count(a) => count(a, ctx, r),
        Command::Kappa(a) => kappa(a, ctx, r),
        Command::Shadow(a) => shadow(a, ctx, r),
        Command::Kk(a) => kk(a, ctx, r),
        Command::Qkk(a) => qkk(a, ctx, r),
        Command::Entropy(a) => entropy_cmd(a, ctx, r),
        Command::Forbidding(a) => forbidding_cmd(a, ctx, r),
        Command::Construct(a) => construct(a, ctx, r),
        Command::Search(a) => search_cmd(a, ctx, r),
        Command::Weighted(a) => weighted(a, ctx, r),
        Command::PartialShadow(a) => partial_shadow(a, ctx, r),
        Command::Validate(a) => validate(&a.input, ctx, r),
    }
}

fn rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn rational_real(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

fn set_ratio(r: &mut Report, ratio: Option<&BigRational>) {
    match ratio {
        Some(x) => {
            r.set("ratio", rational(x));
            r.set_real("ratio_real", rational_real(x));
        }
        None => r.set("ratio", "undefined"),
    }
}

fn bounds(r: &mut Report, list: &[BoundReport]) {
    for b in list {
        r.bound(b);
    }
}

fn color_list(h: &ColoredHypergraph, given: &[String], d: Option<usize>) -> Result<Vec<String>> {
    if !given.is_empty() {
        return Ok(given.to_vec());
    }
    let found = h.colors();
    match d {
        Some(d) if found.len() != d => Err(Error::Invalid(format!(
            "the input has {} colors, pass --colors to choose {d}",
            found.len()
        ))),
        _ => Ok(found),
    }
}

fn count(a: &CountArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let h = ctx.hypergraph(&a.input)?;
    match a.kind {
        CountKind::Rainbow => {
            let colors = color_list(&h, &a.colors, a.d)?;
            let d = a.d.unwrap_or(colors.len());
            let names: Vec<&str> = colors.iter().map(String::as_str).collect();
            r.set("rainbow_cliques", hypergraph::count_rainbow_cliques(&h, d, &names)?);
            r.set("d", d);
            for c in &names {
                r.set(&format!("count.{c}"), h.color_count(c));
            }
        }
        CountKind::Good6 => {
            let g = hypergraph::good6_report(&h)?;
            r.set("edges", g.edges);
            r.set("good_6sets", &g.good);
            set_ratio(r, g.ratio.as_ref());
            bounds(r, &g.bounds);
        }
        CountKind::Mixed => {
            let m = hypergraph::count_good_4subsets_mixed(&h)?;
            r.set("two_edges", m.two_edges);
            r.set("three_edges", m.three_edges);
            r.set("good_4sets", &m.good);
            set_ratio(r, m.ratio.as_ref());
            bounds(r, &m.bounds);
        }
        CountKind::Covering => {
            let c = hypergraph::count_color_covering_subsets(&h, a.delta)?;
            r.set("delta", c.delta);
            r.set("count.red", c.red);
            r.set("count.green", c.green);
            r.set("count.blue", c.blue);
            r.set("covering_sets", &c.good);
            set_ratio(r, c.ratio.as_ref());
            bounds(r, &c.bounds);
        }
    }
    Ok(())
}

fn kappa(a: &KappaArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let h = ctx.hypergraph(&a.input)?;
    let colors = color_list(&h, &a.colors, Some(a.d))?;
    let names: Vec<&str> = colors.iter().map(String::as_str).collect();
    let k = hypergraph::kappa_ratio(&h, a.d, &names)?;
    r.set("d", k.d);
    r.set("rainbow_cliques", &k.rainbow_cliques);
    for (c, n) in &k.color_counts {
        r.set(&format!("count.{c}"), n);
    }
    set_ratio(r, Some(&k.ratio));
    let tight: Vec<&str> = k.bounds.iter().filter(|b| b.is_tight()).map(|b| b.source.as_str()).collect();
    r.set("tight", if tight.is_empty() { "none".into() } else { tight.join("; ") });
    bounds(r, &k.bounds);
    Ok(())
}

fn shadow(a: &FamilyArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let content = ctx.read(&a.family)?;
    let is_subspace = serde_json::from_str::<serde_json::Value>(&content)
        .map(|v| v.get("q").is_some())
        .unwrap_or(false);
    let written = if is_subspace {
        let f = io::parse_subspace_family(&content)?;
        let s = qlinalg::subspace_shadow(&f)?;
        r.set("family_size", f.len());
        r.set("shadow_size", s.len());
        io::subspace_family_to_json(&s)
    } else {
        let f = io::parse_set_family(&content)?;
        let s = hypergraph::shadow(&f)?;
        r.set("family_size", f.len());
        r.set("shadow_size", s.len());
        io::set_family_to_json(&s)
    };
    if let Some(out) = &a.out {
        write_file(out, &written)?;
        r.set("written", out.display());
    }
    Ok(())
}

fn kk(a: &FamilyArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let f = ctx.set_family(&a.family)?;
    let b = hypergraph::check_kruskal_katona(&f)?;
    r.set("family_size", f.len());
    r.set("shadow_size", &b.computed);
    r.set_real("t", b.parameter.unwrap_or(f64::NAN));
    r.set("tight", b.is_tight());
    if let Some(out) = &a.out {
        write_file(out, &io::set_family_to_json(&hypergraph::shadow(&f)?))?;
    }
    r.bound(&b);
    Ok(())
}

fn qkk(a: &FamilyArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let f = ctx.subspace_family(&a.family)?;
    let b = qlinalg::check_q_kruskal_katona(&f)?;
    r.set("q", f.q());
    r.set("family_size", f.len());
    r.set("shadow_size", &b.computed);
    r.set_real("t", b.parameter.unwrap_or(f64::NAN));
    r.set("tight", b.is_tight());
    if let Some(out) = &a.out {
        write_file(out, &io::subspace_family_to_json(&qlinalg::subspace_shadow(&f)?))?;
    }
    r.bound(&b);
    Ok(())
}

fn entropy_cmd(a: &EntropyArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    if let Some(path) = &a.family {
        let f = ctx.set_family(path)?;
        let k = entropy::check_key_inequality_capped(&f, ctx.caps.tuples)?;
        for (i, s) in k.s.iter().enumerate() {
            r.set_real(&format!("s_{}", i + 1), *s);
        }
        r.set_real("t", k.t);
        r.set("telescoped", k.telescoped);
        r.set("holds", k.holds());
        bounds(r, &k.steps);
        r.bound(&k.r_bound);
        return Ok(());
    }
    let Some(path) = &a.dist else {
        return Err(Error::Invalid("entropy needs --dist or --family".into()));
    };
    let dist = io::parse_distribution(&ctx.read(path)?)?;
    let coords: Vec<usize> = if a.coords.is_empty() {
        (0..dist.arity()).filter(|c| !a.given.contains(c)).collect()
    } else {
        a.coords.clone()
    };
    r.set("arity", dist.arity());
    r.set("support", dist.len());
    if a.given.is_empty() {
        r.set_real("entropy", entropy::entropy(&dist, &coords)?);
    } else {
        r.set_real("entropy", entropy::conditional_entropy(&dist, &coords, &a.given)?);
    }
    if a.shearer {
        r.bound(&entropy::check_shearer(&dist, &CoverSpec::leave_one_out(dist.arity())?)?);
    }
    Ok(())
}

fn parse_set(s: &str) -> Result<Vec<Element>> {
    s.split(',')
        .filter(|w| !w.trim().is_empty())
        .map(|w| {
            w.trim()
                .parse::<Element>()
                .map_err(|_| Error::Invalid(format!("`{w}` in --set {s} is not an element id")))
        })
        .collect()
}

fn axiom_message(a: &AxiomReport) -> Option<String> {
    let v = a.violation.as_ref()?;
    Some(match &v.kind {
        AxiomViolationKind::BadSingleton => format!("singleton {:?} is bad", v.multiset),
        AxiomViolationKind::GoodExtensionOfBad { extension } => {
            format!("bad multiset {:?} has the good extension {extension}", v.multiset)
        }
        AxiomViolationKind::WrongExtensionCount { k, declared, found } => format!(
            "good {k}-multiset {:?} has {found} bad extensions, c_{k} = {declared}",
            v.multiset
        ),
    })
}

fn forbidding_cmd(a: &ForbiddingArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let mut sets: Vec<Vec<Element>> = a.sets.iter().map(|s| parse_set(s)).collect::<Result<_>>()?;
    let sys: Box<dyn ForbiddingSystem> = match a.system {
        SystemKind::Repeats => Box::new(Repeats::new(a.n, a.d)?),
        SystemKind::Linear => Box::new(LinearDependence::new(a.q, a.n, a.d)?),
    };
    if let Some(dim) = a.subspace_sets {
        if a.system != SystemKind::Linear {
            return Err(Error::Invalid("--subspace-sets needs --system linear".into()));
        }
        for s in qlinalg::enumerate_subspaces(a.q, a.n, dim)? {
            sets.push(s.element_ids().into_iter().filter(|&e| e != 0).collect());
        }
    }
    r.set("d", sys.d());
    r.set("universe", sys.universe().len());
    r.set("c_vector", format!("{:?}", sys.c_vector().entries()));

    let axioms = match a.spot_check {
        Some(n) => forbidding::spot_check_axioms(sys.as_ref(), n, ctx.seed),
        None => {
            let cap = AxiomCap {
                universe: ctx.caps.universe,
                d: ctx.caps.depth,
            };
            match forbidding::verify_axioms_capped(sys.as_ref(), cap) {
                Ok(rep) => rep,
                Err(Error::Capacity { .. }) => {
                    forbidding::spot_check_axioms(sys.as_ref(), FALLBACK_SPOT_SAMPLES, ctx.seed)
                }
                Err(e) => return Err(e),
            }
        }
    };
    r.set("axioms", if axioms.exhaustive { "exhaustive" } else { "spot check" });
    r.set("axioms_checked", axioms.checked);
    if let Some(msg) = axiom_message(&axioms) {
        return Err(Error::Invalid(format!("axiom violated: {msg}")));
    }
    r.set("axioms_valid", true);

    if sets.is_empty() {
        return Ok(());
    }
    for (i, s) in sets.iter().enumerate() {
        forbidding::is_compatible(sys.as_ref(), s)?
            .into_result()
            .map_err(|e| Error::Invalid(format!("set {i}: {e}")))?;
    }
    r.set("sets", sets.len());
    let g = forbidding::check_generalized_kk(sys.as_ref(), &sets)?;
    r.set("family_size", g.family_size);
    r.set("shadow_size", g.shadow_size);
    r.set_real("t", g.t);
    r.set("tight", g.report.is_tight());
    r.bound(&g.report);
    Ok(())
}

fn need(v: Option<usize>, flag: &str, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::Invalid(format!("construction {name} needs --{flag}")))
}

fn construct(a: &ConstructArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let name = a.name.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    if a.name == ConstructionName::CompleteFamily {
        let f = constructions::complete_family(need(a.m, "m", &name)?, need(a.d, "d", &name)?)?;
        r.set("construction", &name);
        r.set("family_size", f.len());
        return emit(a, r, io::set_family_to_json(&f));
    }
    let c: Construction = match a.name {
        ConstructionName::K4Blowup => constructions::k4_blowup(need(a.n, "n", &name)?)?,
        ConstructionName::RainbowTripartite => constructions::rainbow_tripartite(
            need(a.a, "a", &name)?,
            need(a.b, "b", &name)?,
            need(a.c, "c", &name)?,
        )?,
        ConstructionName::Matching => constructions::matching_construction(need(a.d, "d", &name)?)?,
        ConstructionName::Tetrahedra8 => constructions::tetrahedra8()?,
        ConstructionName::Flats => constructions::flats_example()?,
        ConstructionName::TripartiteMixed => constructions::tripartite_mixed(need(a.n, "n", &name)?)?,
        ConstructionName::KappaLift => {
            let path = a
                .input
                .as_ref()
                .ok_or_else(|| Error::Invalid("kappa-lift needs --input".into()))?;
            let h = ctx.hypergraph(path)?;
            let colors = color_list(&h, &a.colors, None)?;
            let names: Vec<&str> = colors.iter().map(String::as_str).collect();
            constructions::kappa_lift(&h, &names, &a.new_color)?
        }
        ConstructionName::CompleteFamily => unreachable!("handled above"),
    };
    c.self_check()?;
    r.set("construction", &c.name);
    r.set("vertices", c.hypergraph.vertex_count());
    r.set("edges", c.hypergraph.edge_count());
    r.set("self_check", "passed");
    match &c.expectation {
        Expectation::Rainbow { d, colors, cliques, .. } => {
            let names: Vec<&str> = colors.iter().map(String::as_str).collect();
            let k = hypergraph::kappa_ratio(&c.hypergraph, *d, &names)?;
            r.set("rainbow_cliques", cliques);
            set_ratio(r, Some(&k.ratio));
            bounds(r, &k.bounds);
        }
        Expectation::Good6 { good, .. } => {
            let g = hypergraph::good6_report(&c.hypergraph)?;
            r.set("good_6sets", good);
            set_ratio(r, g.ratio.as_ref());
            bounds(r, &g.bounds);
        }
        Expectation::Mixed { good, .. } => {
            let m = hypergraph::count_good_4subsets_mixed(&c.hypergraph)?;
            r.set("good_4sets", good);
            set_ratio(r, m.ratio.as_ref());
            bounds(r, &m.bounds);
        }
    }
    let body = match a.format {
        Format::Json => io::hypergraph_to_json(&c.hypergraph),
        Format::Text => io::hypergraph_to_text(&c.hypergraph),
    };
    emit(a, r, body)
}

fn emit(a: &ConstructArgs, r: &mut Report, body: String) -> Result<()> {
    match &a.out {
        Some(path) => {
            write_file(path, &body)?;
            r.set("written", path.display());
        }
        None => r.set("output", body),
    }
    Ok(())
}

fn search_cmd(a: &SearchArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let opts = SearchOptions {
        color_symmetry: a.color_symmetry,
        state_budget: ctx.caps.states,
    };
    let (problem, result) = match a.kind {
        SearchKind::RainbowTriangle => {
            let n = a.max_vertices.unwrap_or(4);
            let res = search::search_rainbow_triangle_with(n, &opts)?;
            (Problem::RainbowClique { d: 3, vertices: n }, res)
        }
        SearchKind::Mixed4 => {
            let n = a.max_vertices.unwrap_or(4);
            (Problem::Mixed4 { vertices: n }, search::search_mixed_4subsets_with(n, &opts)?)
        }
        SearchKind::Probe => {
            let vertices = a
                .vertices
                .or(a.max_vertices)
                .ok_or_else(|| Error::Invalid("probe needs --vertices".into()))?;
            let problem = match a.problem.unwrap_or(ProbeProblem::Rainbow) {
                ProbeProblem::Rainbow => Problem::RainbowClique {
                    d: a.d.unwrap_or(3),
                    vertices,
                },
                ProbeProblem::Good6 => Problem::Good6 { vertices },
                ProbeProblem::Mixed4 => Problem::Mixed4 { vertices },
                ProbeProblem::Covering => Problem::Covering {
                    delta: a.delta,
                    vertices,
                },
            };
            r.set("seed", ctx.seed);
            r.set("trials", a.trials);
            let res = search::random_probe(&problem, a.density, a.trials, ctx.seed)?;
            (problem, res)
        }
    };
    report_search(r, &problem, &result)?;
    if let (Some(path), Some(w)) = (&a.out, &result.witness) {
        write_file(path, &io::hypergraph_to_json(w))?;
        r.set("written", path.display());
    }
    Ok(())
}

fn report_search(r: &mut Report, problem: &Problem, res: &SearchResult) -> Result<()> {
    r.set("explored", res.explored);
    r.set("exhaustive", res.exhaustive);
    set_ratio(r, res.best.as_ref());
    let Some(w) = &res.witness else {
        return Ok(());
    };
    r.set("witness_edges", w.edge_count());
    let (ratio, list) = match *problem {
        Problem::RainbowClique { d, .. } => {
            let names = if d == 3 && w.colors().iter().all(|c| hypergraph::COVERING_COLORS.contains(&c.as_str())) {
                hypergraph::COVERING_COLORS.map(String::from).to_vec()
            } else {
                constructions::matching_colors(d)
            };
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let k = hypergraph::kappa_ratio(w, d, &names)?;
            (Some(k.ratio), k.bounds)
        }
        Problem::Good6 { .. } => {
            let g = hypergraph::good6_report(w)?;
            (g.ratio, g.bounds)
        }
        Problem::Mixed4 { .. } => {
            let m = hypergraph::count_good_4subsets_mixed(w)?;
            (m.ratio, m.bounds)
        }
        Problem::Covering { delta, .. } => {
            let c = hypergraph::count_color_covering_subsets(w, delta)?;
            (c.ratio, c.bounds)
        }
    };
    if ratio != res.best {
        return Err(Error::Invalid("witness recount disagrees with the search result".into()));
    }
    r.set("witness_recount", "agrees");
    bounds(r, &list);
    Ok(())
}

fn weighted(a: &WeightedArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let h = ctx.hypergraph(&a.input)?;
    let w = hypergraph::weighted_joint_sum(&h, a.d)?;
    r.set("d", w.d);
    r.set("total_weight", w.total_weight);
    r.set("joint_sets", w.radicands.len());
    r.set_real("joint_sum", w.sum);
    r.bound(&w.report);
    if a.d == 3 {
        let s = hypergraph::spectral_trace_check(&h)?;
        r.set_real("trace_m2", s.trace_m2);
        r.set_real("trace_m3", s.trace_m3);
        let tol = hypergraph::TRACE_TOLERANCE;
        let m2 = 2.0 * s.total_weight as f64;
        r.bound(&BoundReport::upper_with_tolerance("|tr(M^2) - 2N|", (s.trace_m2 - m2).abs(), 0.0, tol * m2.max(1.0), "trace identity tr(M^2) = 2N"));
        let m3 = 6.0 * s.joint_sum;
        r.bound(&BoundReport::upper_with_tolerance(
            "|tr(M^3) - 6 sum|",
            (s.trace_m3 - m3).abs(),
            0.0,
            tol * m3.max(1.0),
            "trace identity tr(M^3) = 6 sum w^(3/2)",
        ));
        r.bound(&s.report);
        r.set("trace_identities", s.m2_identity && s.m3_identity);
    }
    Ok(())
}

fn partial_shadow(a: &PartialShadowArgs, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let h = ctx.hypergraph(&a.input)?;
    let m = hypergraph::count_partial_shadow_targets(&h, a.r, a.k)?;
    r.set("targets", &m);
    let b = hypergraph::check_partial_shadow_bound(&h, a.r, a.k)?;
    r.set("edges", h.edge_count());
    r.set_real("x", b.parameter.unwrap_or(f64::NAN));
    r.set("tight", b.is_tight());
    r.bound(&b);
    Ok(())
}

fn validate(path: &Path, ctx: &mut Ctx, r: &mut Report) -> Result<()> {
    let raw = io::parse_hypergraph(&ctx.read(path)?)?;
    let v = hypergraph::validate(raw.vertices, &raw.edges);
    r.set("vertices", raw.vertices);
    r.set("edges", raw.edges.len());
    r.set("violations", v.violations.len());
    if v.is_valid() {
        return Ok(());
    }
    let listed: Vec<String> = v.violations.iter().map(ToString::to_string).collect();
    Err(Error::Invalid(listed.join("; ")))
}
