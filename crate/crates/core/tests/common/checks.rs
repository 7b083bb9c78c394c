//! Randomised instances of each recolouring and factorisation lemma, checked
//! against their stated postconditions with code independent of the library.

use std::collections::BTreeMap;

use hampath_core::{
    almost_regular_recolour, build_graph, connect_pair, equitabilise, part_partition,
    proportional_factorization, two_factorization, Colouring, Factorisation, MultiGraph,
    SymmetricOrbit,
};
use rand::Rng;

use super::*;

pub type Check = std::result::Result<(), String>;

macro_rules! require {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn class_sizes(g: &MultiGraph, colours: &BTreeMap<usize, usize>, t: usize) -> Vec<usize> {
    let mut sizes = vec![0; t];
    for e in g.edges() {
        sizes[colours[&e.id]] += 1;
    }
    sizes
}

pub fn almost_regular_recolour_instance(seed: u64) -> Check {
    let mut r = rng(seed);
    let (g, orbit) = symmetric_orbit_graph(&mut r, 10, None);
    let t = r.gen_range(1..=4);
    let input = random_colouring(&mut r, &g, t);
    let output = almost_regular_recolour(&g, &input, &SymmetricOrbit::new(orbit.iter().copied()))
        .map_err(|e| format!("seed {seed}: {e}"))?;
    let (before, after) = (colour_map(&input), colour_map(&output));
    require!(
        after.len() == g.edge_count(),
        "seed {seed}: output not total"
    );
    require!(
        class_sizes(&g, &before, t) == class_sizes(&g, &after, t),
        "seed {seed}: (a) class sizes changed"
    );
    let (d0, d1) = (
        colour_degrees(&g, &before, t),
        colour_degrees(&g, &after, t),
    );
    for v in (0..g.vertex_count()).filter(|v| !orbit.contains(v)) {
        require!(
            d0[v] == d1[v],
            "seed {seed}: (b) colour degrees changed at {v}"
        );
    }
    for e in g.edges() {
        if !orbit.contains(&e.a) && !orbit.contains(&e.b) {
            require!(
                before[&e.id] == after[&e.id],
                "seed {seed}: (c) edge {} recoloured",
                e.id
            );
        }
    }
    require!(
        almost_regular(&d1, &orbit),
        "seed {seed}: (d) not almost regular"
    );
    Ok(())
}

/// Factor-by-factor multiset of unordered part pairs.
fn part_profile(
    g: &MultiGraph,
    part: &[usize],
    colours: &BTreeMap<usize, usize>,
    t: usize,
) -> Vec<BTreeMap<(usize, usize), usize>> {
    let mut out = vec![BTreeMap::new(); t];
    for e in g.edges() {
        let (x, y) = (part[e.a].min(part[e.b]), part[e.a].max(part[e.b]));
        *out[colours[&e.id]].entry((x, y)).or_insert(0) += 1;
    }
    out
}

pub fn equitabilise_instance(seed: u64) -> Check {
    let mut r = rng(seed);
    let spec = random_spec(&mut r, 10);
    let (k, parts) = build_graph(&spec);
    let part: Vec<usize> = spec
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| std::iter::repeat_n(i, a))
        .collect();
    let t = r.gen_range(1..=4);
    let input = Factorisation::new(k.clone(), random_colouring(&mut r, &k, t)).unwrap();
    let output =
        equitabilise(&k, &parts, &input).map_err(|e| format!("seed {seed} {spec}: {e}"))?;
    let (before, after) = (
        colour_map(input.assignment()),
        colour_map(output.assignment()),
    );
    require!(
        part_profile(&k, &part, &before, t) == part_profile(&k, &part, &after, t),
        "seed {seed} {spec}: (1) part quotient changed"
    );
    require!(
        class_sizes(&k, &before, t) == class_sizes(&k, &after, t),
        "seed {seed} {spec}: factor sizes changed"
    );
    let table = colour_degrees(&k, &after, t);
    for x in 0..spec.part_count() {
        let members: Vec<usize> = (0..k.vertex_count()).filter(|&v| part[v] == x).collect();
        require!(
            almost_regular(&table, &members),
            "seed {seed} {spec}: (2) part {x} unbalanced"
        );
    }
    Ok(())
}

/// A connect_pair input satisfying the precondition: a symmetric pair in a
/// random multigraph, or two vertices of one part of a complete multipartite
/// graph, with a random factorisation.
fn connect_pair_input(
    r: &mut rand_chacha::ChaCha8Rng,
) -> (MultiGraph, usize, usize, Colouring, usize) {
    loop {
        let (g, alpha, beta) = if r.gen_bool(0.5) {
            let (g, orbit) = symmetric_orbit_graph(r, 10, Some(2));
            (g, orbit[0], orbit[1])
        } else {
            let spec = random_spec(r, 10);
            let parts = part_partition(&spec);
            let Some(part) = parts.blocks().iter().find(|p| p.len() >= 2).cloned() else {
                continue;
            };
            let i = r.gen_range(0..part.len());
            let mut j = r.gen_range(0..part.len() - 1);
            if j >= i {
                j += 1;
            }
            (build_graph(&spec).0, part[i], part[j])
        };
        let t = r.gen_range(1..=4);
        let colouring = random_colouring(r, &g, t);
        let colours = colour_map(&colouring);
        let n = g.vertex_count();
        let ok = (0..t).all(|c| {
            let pairs = class_pairs(&g, &colours, c);
            let labels = component_labels(n, &pairs);
            labels[alpha] == labels[beta] || on_cycle(n, &pairs, alpha) || on_cycle(n, &pairs, beta)
        });
        if ok {
            return (g, alpha, beta, colouring, t);
        }
    }
}

pub fn connect_pair_instance(seed: u64) -> Check {
    let mut r = rng(seed);
    let (g, alpha, beta, colouring, t) = connect_pair_input(&mut r);
    let n = g.vertex_count();
    let input = Factorisation::new(g.clone(), colouring).unwrap();
    let output = connect_pair(&g, &input, alpha, beta).map_err(|e| format!("seed {seed}: {e}"))?;
    let (before, after) = (
        colour_map(input.assignment()),
        colour_map(output.assignment()),
    );
    require!(
        after.len() == g.edge_count(),
        "seed {seed}: output not total"
    );
    require!(
        class_sizes(&g, &before, t) == class_sizes(&g, &after, t),
        "seed {seed}: (1) sizes changed"
    );
    let (d0, d1) = (
        colour_degrees(&g, &before, t),
        colour_degrees(&g, &after, t),
    );
    for v in (0..n).filter(|&v| v != alpha && v != beta) {
        require!(d0[v] == d1[v], "seed {seed}: (2) degree changed at {v}");
    }
    for e in g.edges() {
        if ![e.a, e.b].iter().any(|&v| v == alpha || v == beta) {
            require!(
                before[&e.id] == after[&e.id],
                "seed {seed}: (3) edge {} moved",
                e.id
            );
        }
    }
    require!(
        almost_regular(&d1, &[alpha, beta]),
        "seed {seed}: (4) pair unbalanced"
    );
    let mut separated = false;
    let (mut c_before, mut c_after) = (0, 0);
    for c in 0..t {
        let old = class_pairs(&g, &before, c);
        let new = class_pairs(&g, &after, c);
        let (l0, l1) = (component_labels(n, &old), component_labels(n, &new));
        separated |= l0[alpha] != l0[beta];
        require!(
            l1[alpha] == l1[beta],
            "seed {seed}: (5) factor {c} separates the pair"
        );
        c_before += count_components(n, &old);
        c_after += count_components(n, &new);
    }
    require!(
        c_after <= c_before && (!separated || c_after < c_before),
        "seed {seed}: component total {c_before} -> {c_after}"
    );
    Ok(())
}

fn partition_check(g: &MultiGraph, factors: &[MultiGraph]) -> bool {
    let mut ids: Vec<usize> = factors.iter().flat_map(|f| f.edge_ids()).collect();
    ids.sort_unstable();
    ids == g.edge_ids().collect::<Vec<_>>()
}

pub fn two_factorization_instance(seed: u64) -> Check {
    let mut r = rng(seed);
    let n = r.gen_range(1..=12);
    let k = r.gen_range(1..=4);
    let g = random_even_regular(&mut r, n, k);
    let factors = two_factorization(&g).map_err(|e| format!("seed {seed}: {e}"))?;
    require!(
        factors.len() == k,
        "seed {seed}: {} factors, expected {k}",
        factors.len()
    );
    for (i, f) in factors.iter().enumerate() {
        require!(
            f.vertex_count() == n,
            "seed {seed}: factor {i} not spanning"
        );
        let mut deg = vec![0; n];
        for e in f.edges() {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        require!(
            deg.iter().all(|&d| d == 2),
            "seed {seed}: factor {i} not 2-regular"
        );
    }
    require!(
        partition_check(&g, &factors),
        "seed {seed}: factors do not partition the edges"
    );
    Ok(())
}

pub fn proportional_instance(seed: u64) -> Check {
    let mut r = rng(seed);
    let copies = r.gen_range(1..=10);
    let t = r.gen_range(1..=4);
    let g = random_proportional(&mut r, copies, t);
    let f = proportional_factorization(&g, t).map_err(|e| format!("seed {seed}: {e}"))?;
    let factors = f.factors();
    require!(factors.len() == t, "seed {seed}: wrong factor count");
    let full = g.degrees();
    for (i, fi) in factors.iter().enumerate() {
        let mut deg = vec![0; g.vertex_count()];
        for e in fi.edges() {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        require!(
            deg.iter().zip(&full).all(|(&d, &dv)| d * t == dv),
            "seed {seed}: factor {i} not proportional"
        );
    }
    require!(
        partition_check(&g, &factors),
        "seed {seed}: factors do not partition the edges"
    );
    Ok(())
}
