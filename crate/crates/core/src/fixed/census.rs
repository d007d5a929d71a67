//! Subspace counts and per-container compositions compared against their
//! closed forms in q, n and g.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{composition, FixedGeometry, LineClass, PlaneClass};
use crate::gf::Params;
use crate::pg::PointId;
use crate::reduction::{LineType2, PointType8, ReductionContext};

/// How many containers of each kind to inspect.
#[derive(Clone, Copy, Debug)]
pub enum Sampling {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

impl Sampling {
    pub fn pick(&self, total: usize, salt: u64) -> Vec<usize> {
        match *self {
            Sampling::Sample { count, seed } if count < total => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                let mut v = sample(&mut rng, total, count).into_vec();
                v.sort_unstable();
                v
            }
            _ => (0..total).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub row: String,
    pub expected: i64,
    pub computed: i64,
    pub pass: bool,
}

/// One row of a composition table: the expected profile and every distinct
/// profile observed over the inspected containers.
#[derive(Clone, Debug, Serialize)]
pub struct CompositionRow {
    pub table: &'static str,
    pub row: String,
    pub columns: Vec<&'static str>,
    pub expected: Vec<i64>,
    pub observed: Vec<Vec<i64>>,
    pub checked: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub q: i64,
    pub n: i64,
    pub g: i64,
    pub counts: Vec<CountRow>,
    pub points: Vec<CompositionRow>,
    pub lines: Vec<CompositionRow>,
}

impl Census {
    pub fn all_pass(&self) -> bool {
        self.counts.iter().all(|r| r.pass)
            && self.points.iter().chain(&self.lines).all(|r| r.pass)
    }

    pub fn count(&self, row: &str) -> Option<i64> {
        self.counts.iter().find(|r| r.row == row).map(|r| r.computed)
    }
}

/// Closed-form number of each kind of subspace.
pub fn expected_counts(p: &Params) -> Vec<(&'static str, i64)> {
    let (q, n, g) = (p.q, p.n, p.g);
    let v = p.v();
    let k = q - n + 1;
    vec![
        ("S_I-plane", v),
        ("S_II-plane", v * (q * q * q - q)),
        ("S_III-plane", q * q * q * (q - 1) * (q - 1) * (q + 1)),
        ("fixed point", g * v),
        ("I:-point", g * (q - n) * v),
        ("I..-point", (v - g * k) * v),
        ("II:-point", g * v * (q * q * q - q)),
        ("II..-point", v * (q * q * q - q) * (v - g)),
        ("III..-point", q * q * q * (q * q - 1) * (q * q * q - 1)),
        ("ptwise-fixed line", g * v),
        ("fixed-I-line", g * v),
        ("fixed-II-line", g * (q * q * q - q) * v / (q - n)),
        ("ptwise-fixed plane", g),
        ("fixed-II1-plane", g * (q - 2 + g - n) * (q + 1) * v),
        ("fixed-II2-plane", (q * q * q - q) * v),
        ("fixed-III-plane", q * q * q * (q * q - 1) * (q - 1) * v / (v - g * k)),
        ("h1-plane", g * (n + 1) * v * (q + 1)),
        ("h2-plane", g * (n + 1) * v * (q * q - 1 + n)),
        ("hwise-fixed 5-space", g),
    ]
}

/// Expected point-type profile of each container kind.
pub fn expected_points(p: &Params, row: &str) -> Option<[i64; 6]> {
    let (q, n, g) = (p.q, p.n, p.g);
    let v = p.v();
    let k = q - n + 1;
    Some(match row {
        "ptwise-fixed line" => [q + 1, 0, 0, 0, 0, 0],
        "fixed-I-line" => [n + 1, q - n, 0, 0, 0, 0],
        "fixed-II-line" => [n + 1, 0, 0, q - n, 0, 0],
        "S_I-plane" => [g, g * (q - n), v - g * k, 0, 0, 0],
        "S_II-plane" => [0, 0, 0, g, v - g, 0],
        "S_III-plane" => [0, 0, 0, 0, 0, v],
        "ptwise-fixed plane" => [v, 0, 0, 0, 0, 0],
        "fixed-II1-plane" => [g, q - n, 0, (g - 1) * (q - n), v - g * k, 0],
        "fixed-II2-plane" => [g, 0, 0, g * (q - n), v - g * k, 0],
        "fixed-III-plane" => [g, 0, 0, g * (q - n), 0, v - g * k],
        "h1-plane" => [q + 1 + n, q - n, 0, q * q - q, 0, 0],
        "h2-plane" => [q + 1 + n, 0, 0, q * q - n, 0, 0],
        "hwise-fixed 5-space" => [(n + 1) * v, (q - n) * v, 0, (q * q * q - q) * v, 0, 0],
        _ => return None,
    })
}

/// Expected (ptwise-fixed, fixed-I, fixed-II) line counts of each container kind.
pub fn expected_lines(p: &Params, row: &str) -> Option<[i64; 3]> {
    let (q, n, g) = (p.q, p.n, p.g);
    let v = p.v();
    let c = q * q * q - q;
    Some(match row {
        "S_I-plane" => [0, g, 0],
        "S_II-plane" | "S_III-plane" | "H_III-5-space" => [0, 0, 0],
        "ptwise-fixed plane" => [v, 0, 0],
        "fixed-II1-plane" => [0, 1, g - 1],
        "fixed-II2-plane" | "fixed-III-plane" => [0, 0, g],
        "h1-plane" => [1, 1, q - 1 + n],
        "h2-plane" => [1, 0, q + n],
        "H_I-5-space" => [g, g * (q + 1), g * c / (q - n)],
        "H_II-5-space" => [0, g, 0],
        "hwise-fixed 5-space" => [(n + 1) * v, v, c * v / (q - n)],
        _ => return None,
    })
}

const POINT_COLUMNS: [&str; 6] = ["fixed", "I:", "I..", "II:", "II..", "III.."];
const LINE_COLUMNS: [&str; 3] = ["ptwise-fixed", "fixed-I", "fixed-II"];

/// A container: its label and sorted point set.
struct Container {
    row: String,
    points: Vec<PointId>,
}

/// Points of each S-plane, indexed by PG(2,q³) point.
pub fn splane_points(ctx: &ReductionContext) -> Vec<Vec<PointId>> {
    let mut out = vec![Vec::new(); ctx.pg2().num_points()];
    for x in 0..ctx.pg8().num_points() {
        out[ctx.splane_of(x)].push(x);
    }
    out
}

/// Sorted points of the 5-space ⟦ℓ⟧.
pub fn h_points(ctx: &ReductionContext, sp: &[Vec<PointId>], line: PointId) -> Vec<PointId> {
    let mut pts: Vec<PointId> = ctx.line_points(line).into_iter().flat_map(|p| sp[p].iter().copied()).collect();
    pts.sort_unstable();
    pts
}

pub fn census(ctx: &ReductionContext, geo: &FixedGeometry, sampling: Sampling) -> Census {
    let p = ctx.params;
    let pg8 = ctx.pg8();
    let pg2 = ctx.pg2();

    let mut computed: Vec<(&str, i64)> = Vec::new();
    let pts_by_type: [Vec<PointId>; 3] = {
        let mut v: [Vec<PointId>; 3] = Default::default();
        for x in 0..pg2.num_points() {
            v[ctx.type2(x) as usize].push(x);
        }
        v
    };
    computed.push(("S_I-plane", pts_by_type[0].len() as i64));
    computed.push(("S_II-plane", pts_by_type[1].len() as i64));
    computed.push(("S_III-plane", pts_by_type[2].len() as i64));
    let mut type_counts = [0i64; 6];
    for &t in ctx.types8() {
        type_counts[t.index()] += 1;
    }
    computed.push(("fixed point", geo.fixed_points.len() as i64));
    for t in &PointType8::ALL[1..] {
        let name = match t {
            PointType8::IColinear => "I:-point",
            PointType8::ITriangle => "I..-point",
            PointType8::IIColinear => "II:-point",
            PointType8::IITriangle => "II..-point",
            _ => "III..-point",
        };
        computed.push((name, type_counts[t.index()]));
    }
    for c in LineClass::ALL {
        computed.push((c.label(), geo.line_count(c) as i64));
    }
    for c in PlaneClass::ALL {
        computed.push((c.label(), geo.plane_count(c) as i64));
    }
    computed.push(("hwise-fixed 5-space", geo.hwise_spaces.len() as i64));

    let counts = expected_counts(&p)
        .into_iter()
        .map(|(row, expected)| {
            let got = computed.iter().find(|(r, _)| *r == row).map_or(-1, |&(_, c)| c);
            CountRow { row: row.to_string(), expected, computed: got, pass: got == expected }
        })
        .collect();

    // containers, grouped by row
    let sp = splane_points(ctx);
    let mut groups: Vec<(String, Vec<Container>)> = Vec::new();
    let mut salt = 0u64;
    let mut push = |row: &str, items: Vec<Vec<PointId>>, groups: &mut Vec<(String, Vec<Container>)>| {
        salt += 1;
        let chosen = sampling.pick(items.len(), salt);
        let mut items: Vec<Option<Vec<PointId>>> = items.into_iter().map(Some).collect();
        let cs = chosen
            .into_iter()
            .map(|i| Container { row: row.to_string(), points: items[i].take().unwrap() })
            .collect();
        groups.push((row.to_string(), cs));
    };
    for c in LineClass::ALL {
        push(c.label(), geo.lines_of(c).map(|l| l.points.clone()).collect(), &mut groups);
    }
    for (i, row) in ["S_I-plane", "S_II-plane", "S_III-plane"].iter().enumerate() {
        let items = pts_by_type[i].iter().map(|&pt| sp[pt].clone()).collect();
        push(row, items, &mut groups);
    }
    for c in PlaneClass::ALL {
        if c == PlaneClass::SplaneI {
            continue;
        }
        push(c.label(), geo.planes_of(c).map(|pl| pl.points.clone()).collect(), &mut groups);
    }
    // H-spaces are sampled by index first so only chosen ones are materialised
    let mut lines_by_type: [Vec<PointId>; 3] = Default::default();
    for l in 0..pg2.num_points() {
        if let Ok(t) = ctx.line_type(l) {
            lines_by_type[t as usize].push(l);
        }
    }
    for (t, row) in [(LineType2::I, "H_I-5-space"), (LineType2::II, "H_II-5-space"), (LineType2::III, "H_III-5-space")] {
        salt += 1;
        let ls = &lines_by_type[t as usize];
        let cs = sampling
            .pick(ls.len(), salt)
            .into_iter()
            .map(|i| Container { row: row.to_string(), points: h_points(ctx, &sp, ls[i]) })
            .collect();
        groups.push((row.to_string(), cs));
    }
    groups.push((
        "hwise-fixed 5-space".to_string(),
        geo.hwise_spaces
            .iter()
            .map(|s| Container { row: "hwise-fixed 5-space".into(), points: pg8.points_of(s) })
            .collect(),
    ));

    let mut points = Vec::new();
    let mut lines = Vec::new();
    for (row, cs) in &groups {
        if cs.is_empty() {
            continue;
        }
        if let Some(exp) = expected_points(&p, row) {
            let observed: BTreeSet<Vec<i64>> = cs
                .iter()
                .map(|c| composition(ctx, &c.points).iter().map(|&x| x as i64).collect())
                .collect();
            let observed: Vec<Vec<i64>> = observed.into_iter().collect();
            let pass = observed.len() == 1 && observed[0] == exp;
            points.push(CompositionRow {
                table: "points",
                row: row.clone(),
                columns: POINT_COLUMNS.to_vec(),
                expected: exp.to_vec(),
                observed,
                checked: cs.len(),
                pass,
            });
        }
        if let Some(exp) = expected_lines(&p, row) {
            let observed: BTreeSet<Vec<i64>> = cs
                .iter()
                .map(|c| {
                    debug_assert_eq!(&c.row, row);
                    geo.line_profile(&geo.lines_in(&c.points)).iter().map(|&x| x as i64).collect()
                })
                .collect();
            let observed: Vec<Vec<i64>> = observed.into_iter().collect();
            let pass = observed.len() == 1 && observed[0] == exp;
            lines.push(CompositionRow {
                table: "fixed lines",
                row: row.clone(),
                columns: LINE_COLUMNS.to_vec(),
                expected: exp.to_vec(),
                observed,
                checked: cs.len(),
                pass,
            });
        }
    }
    Census { q: p.q, n: p.n, g: p.g, counts, points, lines }
}
