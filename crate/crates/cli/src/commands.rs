use std::path::Path;
use std::time::Instant;

use cycletri::coloring::{
    check_proper, color_stats, count_colorings_within, enumerate_colorings_within, find_connected_red_blue_within,
    red_blue_components, ListAssignment, DEFAULT_MAX_COLORING_N, WHITE,
};
use cycletri::geometry::{chords, chords_from_triangles, crossing_graph};
use cycletri::io::{read_instance, to_json, write_instance};
use cycletri::laurent::{
    ct_by_expansion_within, ct_by_grid, default_grid_values, expand_within, build_phi, format_rational,
    parse_rational, summand_profile, GridSpec, DEFAULT_GRID_BUDGET, DEFAULT_TERM_CAP,
};
use cycletri::parity::{counts_within, DEFAULT_TRANSVERSAL_BUDGET};
use cycletri::{
    BigInt, BigRational, ChordSystem, CycleTrianglesInstance, Error, Instance, PartitionedGraph, SeededRng,
};
use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::report::RunReport;
use crate::{selftest, CliError, Command, Common, Kind};

/// Stream tags for values derived from `--seed`.
pub(crate) const GRID_STREAM: u64 = 1;
pub(crate) const LIST_STREAM: u64 = 2;

pub fn dispatch(command: &Command, c: &Common) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = match command {
        Command::Gen { kind, out } => gen(c, *kind, out.as_deref())?,
        Command::Ct => ct(c)?,
        Command::Colorings => colorings(c)?,
        Command::Connected => connected(c)?,
        Command::Choosable { lists } => choosable(c, lists.as_deref())?,
        Command::Parity => parity(c)?,
        Command::Chords => chord_report(c)?,
        Command::Selftest => selftest::run(c)?,
    };
    report.wall_time = start.elapsed();
    Ok(report)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_sizes(text: &str) -> Result<Vec<usize>, CliError> {
    let sizes = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| usage(format!("bad part size `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if sizes.iter().any(|&s| s % 2 == 0) {
        return Err(usage("part sizes must be odd"));
    }
    Ok(sizes)
}

pub fn parse_grid(text: &str) -> Result<[BigRational; 3], CliError> {
    let values = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    let values: [BigRational; 3] = values
        .try_into()
        .map_err(|v: Vec<_>| usage(format!("--grid needs 3 values, got {}", v.len())))?;
    cycletri::laurent::grid_weights(&values)?;
    Ok(values)
}

fn grid_values(c: &Common) -> Result<[BigRational; 3], CliError> {
    c.grid.as_deref().map_or_else(|| Ok(default_grid_values()), parse_grid)
}

fn describe_cycle(inst: &CycleTrianglesInstance) -> String {
    let tris: Vec<String> = inst
        .triangles()
        .iter()
        .map(|t| format!("[{},{},{}]", t[0], t[1], t[2]))
        .collect();
    format!("cycle_triangles n={} triangles=[{}]", inst.n(), tris.join(","))
}

fn describe_partitioned(g: &PartitionedGraph) -> String {
    let sizes: Vec<String> = g.parts().iter().map(|p| p.len().to_string()).collect();
    format!("partitioned parts={} edges={}", sizes.join(","), g.edge_count())
}

fn describe_chords(cs: &ChordSystem) -> String {
    let sizes: Vec<String> = cs.polygons().iter().map(|p| p.len().to_string()).collect();
    format!("chords points={} polygons={}", cs.points(), sizes.join(","))
}

fn load(path: &Path) -> Result<Instance, CliError> {
    Ok(read_instance(path)?)
}

fn cycle_instance(c: &Common) -> Result<CycleTrianglesInstance, CliError> {
    if let Some(path) = &c.file {
        return match load(path)? {
            Instance::CycleTriangles(inst) => Ok(inst),
            other => Err(usage(format!("expected a cycle_triangles file, got {}", other.kind()))),
        };
    }
    let seed = c.seed.ok_or_else(|| usage("need --file or --seed"))?;
    let n = c.n.unwrap_or(2);
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    Ok(CycleTrianglesInstance::random(n, seed))
}

fn partitioned_instance(c: &Common) -> Result<PartitionedGraph, CliError> {
    if let Some(path) = &c.file {
        return match load(path)? {
            Instance::Partitioned(g) => Ok(g),
            other => Err(usage(format!("expected a partitioned file, got {}", other.kind()))),
        };
    }
    let seed = c.seed.ok_or_else(|| usage("need --file or --seed"))?;
    let sizes = parse_sizes(c.parts.as_deref().unwrap_or("3,3,3"))?;
    Ok(PartitionedGraph::random(&sizes, seed))
}

fn chord_instance(c: &Common) -> Result<ChordSystem, CliError> {
    if let Some(path) = &c.file {
        return match load(path)? {
            Instance::Chords(cs) => Ok(cs),
            Instance::CycleTriangles(inst) => Ok(chords_from_triangles(&inst)),
            other => Err(usage(format!("expected a chords file, got {}", other.kind()))),
        };
    }
    let seed = c.seed.ok_or_else(|| usage("need --file or --seed"))?;
    let n = c.n.unwrap_or(3);
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    Ok(ChordSystem::random(n, seed))
}

fn gen(c: &Common, kind: Kind, out: Option<&Path>) -> Result<RunReport, CliError> {
    let seed = c.seed.ok_or_else(|| usage("gen needs --seed"))?;
    let gen_args = Common {
        file: None,
        ..c.clone()
    };
    let (instance, summary): (Instance, String) = match kind {
        Kind::CycleTriangles => {
            let inst = cycle_instance(&gen_args)?;
            let s = describe_cycle(&inst);
            (inst.into(), s)
        }
        Kind::Partitioned => {
            let g = partitioned_instance(&gen_args)?;
            let s = describe_partitioned(&g);
            (g.into(), s)
        }
        Kind::Chords => {
            let cs = chord_instance(&gen_args)?;
            let s = describe_chords(&cs);
            (cs.into(), s)
        }
    };
    let mut report = RunReport::new("gen", summary, Some(seed));
    match out {
        Some(path) => {
            write_instance(path, &instance)?;
            report.put("written", path.display().to_string());
        }
        None => report.put("json", to_json(&instance).trim_end().to_string()),
    }
    Ok(report)
}

fn mod4(x: &BigInt) -> BigInt {
    let four = BigInt::from(4);
    ((x % &four) + &four) % &four
}

fn ct(c: &Common) -> Result<RunReport, CliError> {
    let inst = cycle_instance(c)?;
    let cap = c.budget.map_or(DEFAULT_TERM_CAP, |b| b as usize);
    let mut report = RunReport::new("ct", describe_cycle(&inst), c.seed);

    let terms = expand_within(&build_phi(&inst), cap)?;
    let by_expansion = terms.constant_term();
    report.put("expansion terms", terms.len());
    report.put("ct by expansion", by_expansion.to_string());

    let values = grid_values(c)?;
    let m = inst.vertex_count();
    let uniform = GridSpec::uniform(values.clone(), m)?;
    let by_grid = ct_by_grid(&inst, &uniform)?;
    let shown: Vec<String> = values.iter().map(format_rational).collect();
    report.put("grid", shown.join(","));
    report.put("ct by grid", format_rational(&by_grid));

    let residue = mod4(&by_expansion);
    report.put("ct mod 4", residue.to_string());
    report.check("CT mod 4 = 2", residue == BigInt::from(2));
    let exact = BigRational::from_integer(by_expansion.clone());
    report.check("grid equals expansion", by_grid == exact);

    if let Some(seed) = c.seed {
        let mut rng = SeededRng::derived(seed, GRID_STREAM);
        let mixed = GridSpec::random_per_vertex(m, &mut rng);
        let by_mixed = ct_by_grid(&inst, &mixed)?;
        report.put("ct by per-vertex grid", format_rational(&by_mixed));
        report.check("per-vertex grid equals expansion", by_mixed == exact);
    }
    Ok(report)
}

fn max_n(c: &Common) -> usize {
    c.budget.map_or(DEFAULT_MAX_COLORING_N, |b| b as usize)
}

fn colorings(c: &Common) -> Result<RunReport, CliError> {
    let inst = cycle_instance(c)?;
    let limit = max_n(c);
    let mut report = RunReport::new("colorings", describe_cycle(&inst), c.seed);

    let total = count_colorings_within(&inst, limit)?;
    let six = BigUint::from(6u32);
    let divisible = (&total % &six).is_zero();
    let orbits = &total / &six;
    report.put("proper colorings", total.to_string());
    report.put("essentially different", orbits.to_string());
    report.check("proper colorings divisible by 6", divisible);
    report.check("essentially different odd", divisible && orbits.bit(0));

    let mut balanced = true;
    for col in enumerate_colorings_within(&inst, limit)? {
        match color_stats(&inst, &col) {
            Ok(_) => {}
            Err(Error::TheoremViolation(_)) => balanced = false,
            Err(e) => return Err(e.into()),
        }
    }
    report.put("n", inst.n());
    report.check("class sizes (n,n,n) and U=V=W=n", balanced);

    let m = inst.vertex_count() as u32;
    if 3u64.pow(m) <= 3u64.pow(12) {
        let profile = summand_profile(&inst, &default_grid_values(), u64::MAX)?;
        report.put("nonzero grid summands", profile.nonzero());
        report.check("summands in {-1,0,1}", profile.other == 0);
        report.check(
            "nonzero summands equal proper colorings",
            BigUint::from(profile.nonzero()) == total,
        );
    }
    Ok(report)
}

fn coloring_json(colors: &[u8]) -> Value {
    json!(colors)
}

fn connected(c: &Common) -> Result<RunReport, CliError> {
    let inst = cycle_instance(c)?;
    let mut report = RunReport::new("connected", describe_cycle(&inst), c.seed);
    let found = find_connected_red_blue_within(&inst, max_n(c))?;
    let white: Vec<usize> = (0..inst.vertex_count())
        .filter(|&v| found.colors()[v] == WHITE)
        .collect();
    let comps = red_blue_components(&inst, &found);
    report.put("coloring", coloring_json(found.colors()));
    report.put("white vertices", json!(white));
    report.put("blue-red components", comps.len());
    report.check("coloring proper", check_proper(&inst, found.colors()).is_ok());
    report.check("blue-red part connected", comps.len() == 1);
    Ok(report)
}

fn read_lists(path: &Path) -> Result<Vec<[BigRational; 3]>, CliError> {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    let raw: Vec<Vec<String>> =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    raw.iter()
        .enumerate()
        .map(|(v, list)| {
            let parsed = list.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            parsed
                .try_into()
                .map_err(|_| usage(format!("list for vertex {v} must have 3 entries")))
        })
        .collect()
}

fn choosable(c: &Common, lists_path: Option<&Path>) -> Result<RunReport, CliError> {
    let inst = cycle_instance(c)?;
    let m = inst.vertex_count();
    let lists = if let Some(path) = lists_path {
        ListAssignment::new(read_lists(path)?)?
    } else if c.grid.is_some() {
        ListAssignment::new(vec![grid_values(c)?; m])?
    } else {
        let mut rng = SeededRng::derived(c.seed.unwrap_or(0), LIST_STREAM);
        ListAssignment::random(m, &mut rng)
    };
    if lists.lists().len() != m {
        return Err(usage(format!("{} lists for {m} vertices", lists.lists().len())));
    }
    let budget = c.budget.unwrap_or(DEFAULT_GRID_BUDGET);
    let mut report = RunReport::new("choosable", describe_cycle(&inst), c.seed);
    let cert = cycletri::coloring::certify_choosability_within(&inst, &lists, budget)?;
    let shown_lists: Vec<Vec<String>> = lists
        .lists()
        .iter()
        .map(|l| l.iter().map(format_rational).collect())
        .collect();
    report.put("lists", json!(shown_lists));
    report.put("certificate", format_rational(&cert.certificate));
    let chosen: Vec<String> = cert.coloring.iter().map(format_rational).collect();
    report.put("list coloring", json!(chosen));
    report.check("certificate nonzero", !cert.certificate.is_zero());
    if let Ok(expanded) = ct_by_expansion_within(&inst, DEFAULT_TERM_CAP) {
        report.put("ct by expansion", expanded.to_string());
        report.check(
            "certificate equals expansion CT",
            cert.certificate == BigRational::from_integer(expanded),
        );
    }
    let from_lists = cert
        .coloring
        .iter()
        .zip(lists.lists())
        .all(|(x, l)| l.contains(x));
    let proper = inst.multi_edges().all(|(u, v)| cert.coloring[u] != cert.coloring[v]);
    report.check("values drawn from lists", from_lists);
    report.check("list coloring proper", proper);
    Ok(report)
}

fn parity(c: &Common) -> Result<RunReport, CliError> {
    let g = partitioned_instance(c)?;
    let budget = c.budget.unwrap_or(DEFAULT_TRANSVERSAL_BUDGET);
    let mut report = RunReport::new("parity", describe_partitioned(&g), c.seed);
    let (transversals, special) = counts_within(&g, budget)?;
    report.put("eulerian transversals", transversals.to_string());
    report.put("special sequences", special.to_string());
    report.check("transversal count odd", transversals.bit(0));
    report.check("special-sequence parity agrees", special.bit(0) == transversals.bit(0));
    Ok(report)
}

fn chord_report(c: &Common) -> Result<RunReport, CliError> {
    let cs = chord_instance(c)?;
    let budget = c.budget.unwrap_or(DEFAULT_TRANSVERSAL_BUDGET);
    let mut report = RunReport::new("chords", describe_chords(&cs), c.seed);
    let graph = crossing_graph(&cs);
    report.check("crossing graph satisfies partition hypotheses", graph.is_ok());
    let g = graph?;
    report.put("chords", chords(&cs).len());
    report.put("crossing pairs", g.edge_count());
    let (selections, _) = counts_within(&g, budget)?;
    report.put("even-crossing selections", selections.to_string());
    report.check("selection count odd", selections.bit(0));
    Ok(report)
}
