//! Desk-scale run of every invariant over a fixed family of seeded instances.

use cycletri::coloring::{
    certify_choosability, color_stats, count_essentially_different, enumerate_colorings, find_connected_red_blue,
    red_blue_components, ListAssignment,
};
use cycletri::geometry::count_even_crossing_selections;
use cycletri::laurent::{ct_by_expansion, ct_by_grid, default_grid_values, grid_weights, GridSpec};
use cycletri::parity::{counts_within, DEFAULT_TRANSVERSAL_BUDGET};
use cycletri::{BigInt, BigRational, ChordSystem, CycleTrianglesInstance, PartitionedGraph, SeededRng};
use num_traits::{One, Zero};

use crate::report::RunReport;
use crate::{CliError, Common};

const ROUNDS: u64 = 6;

#[derive(Default)]
struct Tally {
    passed: usize,
    total: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.total += 1;
        if ok {
            self.passed += 1;
        }
    }

    fn ok(&self) -> bool {
        self.passed == self.total
    }

    fn label(&self, name: &str) -> String {
        format!("{name} ({}/{})", self.passed, self.total)
    }
}

pub fn run(c: &Common) -> Result<RunReport, CliError> {
    let base = c.seed.unwrap_or(0);
    let mut report = RunReport::new("selftest", "seeded desk-scale family", Some(base));

    let mut congruence = Tally::default();
    let mut grids = Tally::default();
    let mut orbits = Tally::default();
    let mut balance = Tally::default();
    let mut connected = Tally::default();
    let mut lists = Tally::default();
    let four = BigInt::from(4);
    for n in 1..=3usize {
        for k in 0..ROUNDS {
            let seed = base.wrapping_add(k);
            let inst = CycleTrianglesInstance::random(n, seed);
            let m = inst.vertex_count();
            let ct = ct_by_expansion(&inst)?;
            congruence.record(((&ct % &four) + &four) % &four == BigInt::from(2));

            let exact = BigRational::from_integer(ct);
            let mut rng = SeededRng::derived(seed, crate::commands::GRID_STREAM);
            for grid in [
                GridSpec::uniform(default_grid_values(), m)?,
                GridSpec::random_uniform(m, &mut rng),
                GridSpec::random_per_vertex(m, &mut rng),
            ] {
                grids.record(ct_by_grid(&inst, &grid)? == exact);
            }

            orbits.record(count_essentially_different(&inst)?.bit(0));
            balance.record(enumerate_colorings(&inst)?.all(|col| color_stats(&inst, &col).is_ok()));
            let found = find_connected_red_blue(&inst)?;
            connected.record(red_blue_components(&inst, &found).len() == 1);

            let mut rng = SeededRng::derived(seed, crate::commands::LIST_STREAM);
            let cert = certify_choosability(&inst, &ListAssignment::random(m, &mut rng))?;
            lists.record(cert.certificate == exact);
        }
    }

    let mut moments = Tally::default();
    let mut rng = SeededRng::new(base);
    for _ in 0..20 {
        let w = grid_weights(&rng.rational_triple())?;
        moments.record(w.moment(0).is_one() && w.moment(1).is_zero() && w.moment(2).is_zero());
    }

    let mut transversals = Tally::default();
    let mut sequences = Tally::default();
    let mut selections = Tally::default();
    for k in 0..ROUNDS * 4 {
        let seed = base.wrapping_add(k);
        let mut rng = SeededRng::new(seed);
        let parts = 1 + rng.below(4) as usize;
        let sizes: Vec<usize> = (0..parts).map(|_| *rng.pick(&[1, 3, 5])).collect();
        let g = PartitionedGraph::random(&sizes, seed);
        let (t, s) = counts_within(&g, DEFAULT_TRANSVERSAL_BUDGET)?;
        transversals.record(t.bit(0));
        sequences.record(t.bit(0) == s.bit(0));

        let cs = ChordSystem::random(1 + (k % 4) as usize, seed);
        selections.record(count_even_crossing_selections(&cs)?.bit(0));
    }

    for (tally, name) in [
        (&congruence, "CT mod 4 = 2"),
        (&grids, "grid equals expansion"),
        (&moments, "weight moments are (1,0,0)"),
        (&orbits, "essentially different odd"),
        (&balance, "balanced colorings"),
        (&connected, "connected blue-red coloring found"),
        (&lists, "list certificate equals CT"),
        (&transversals, "transversal count odd"),
        (&sequences, "special-sequence parity agrees"),
        (&selections, "even-crossing selections odd"),
    ] {
        report.check(tally.label(name), tally.ok());
    }
    Ok(report)
}
