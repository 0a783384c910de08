//! Edge lists, DOT drawings and permutation files.

use std::io::Write;

use twistcube_core::{Error, Model, TwistSpec, TwistedCube, Vertex};

use crate::error::Result;

/// DOT output is refused above this dimension.
pub const MAX_DOT_DIMENSION: u32 = 8;

/// Writes one `u v` line per edge with `u < v`, sorted.
pub fn write_edgelist<W: Write>(cube: &TwistedCube, mut w: W) -> std::io::Result<()> {
    for u in 0..cube.vertex_count() as u32 {
        let mut nbrs: Vec<u32> =
            cube.neighbors(Vertex(u)).expect("vertex in range").into_iter().map(|v| v.0).filter(|&v| v > u).collect();
        nbrs.sort_unstable();
        for v in nbrs {
            writeln!(w, "{u} {v}")?;
        }
    }
    w.flush()
}

/// Writes an undirected DOT graph; twist edges are labelled by generation.
pub fn write_dot<W: Write>(cube: &TwistedCube, mut w: W, force: bool) -> Result<()> {
    if !force && cube.n() > MAX_DOT_DIMENSION {
        return Err(Error::GuardExceeded {
            what: "dot export dimension",
            size: cube.n() as u64,
            limit: MAX_DOT_DIMENSION as u64,
        }
        .into());
    }
    let io = |e| crate::error::CliError::io("<dot>", e);
    let n = cube.n();
    let base = cube.base_size();
    writeln!(w, "graph G{n} {{").map_err(io)?;
    for u in 0..cube.vertex_count() as u32 {
        let label = if base == 1 { Vertex(u).display(n).to_string() } else { u.to_string() };
        writeln!(w, "  {u} [label=\"{label}\"];").map_err(io)?;
    }
    for u in 0..cube.vertex_count() as u32 {
        let mut nbrs: Vec<u32> =
            cube.neighbors(Vertex(u))?.into_iter().map(|v| v.0).filter(|&v| v > u).collect();
        nbrs.sort_unstable();
        for v in nbrs {
            match (1..=n).find(|&k| cube.neighbor_raw(u, k) == v) {
                Some(k) => writeln!(w, "  {u} -- {v} [label=\"{k}\"];").map_err(io)?,
                None => writeln!(w, "  {u} -- {v} [style=dashed];").map_err(io)?,
            }
        }
    }
    writeln!(w, "}}").map_err(io)?;
    Ok(())
}

/// The resolved permutation tables of `cube` in manifest order.
///
/// The list starts at the first permutation index the spec carries. For the
/// independent model there is one table per (index, suffix) in row-major
/// order; for the duplicube one per index. Feeding the result back as an
/// explicit spec rebuilds the same graph.
pub fn permutation_tables(cube: &TwistedCube) -> Vec<Vec<u32>> {
    let spec = cube.spec();
    if let Some(tables) = &spec.permutations {
        return tables.clone();
    }
    let n = cube.n();
    let mut out = Vec::new();
    for j in spec.first_table_index()..n {
        let k = j + 1;
        let copies = if spec.model == Model::Independent { 1u32 << (n - k) } else { 1 };
        let size = (cube.base_size() as usize) << j;
        for s in 0..copies {
            out.push(match cube.twist_table(k, s) {
                Some(t) => t.image().to_vec(),
                None => (0..size as u32).collect(),
            });
        }
    }
    out
}

/// Explicit spec equivalent to `cube`.
pub fn explicit_equivalent(cube: &TwistedCube) -> TwistSpec {
    let spec = cube.spec();
    TwistSpec {
        model: Model::Explicit,
        n: spec.n,
        seed: spec.seed,
        permutations: Some(permutation_tables(cube)),
        base: spec.base.clone(),
    }
}

/// Writes the permutation file: a JSON array of arrays, one table per line.
pub fn write_permutations<W: Write>(cube: &TwistedCube, mut w: W) -> std::io::Result<()> {
    let tables = permutation_tables(cube);
    writeln!(w, "[")?;
    for (i, t) in tables.iter().enumerate() {
        let sep = if i + 1 < tables.len() { "," } else { "" };
        writeln!(w, "  {}{sep}", serde_json::to_string(t).expect("table serializes"))?;
    }
    writeln!(w, "]")?;
    w.flush()
}
