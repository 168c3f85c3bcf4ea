//! ```text
//! kmout-instance v1
//! k=2
//! m=1
//! z=1
//! euclidean dim=2
//! 0,client,0.5,1
//! 1,both,3,-2
//! ```
//! or, for an explicit metric, `matrix n=<n>`, a `roles=` line with one role
//! per point, and the lower triangle of the distance matrix (diagonal
//! included), one row per line.

use std::sync::Arc;

use kmout_core::{DistanceOracle, MetricInstance, PointId};

use super::{fail, join, parse, FormatResult, Lines};

const HEADER: &str = "kmout-instance v1";

fn role(inst: &MetricInstance, p: PointId) -> &'static str {
    let c = inst.clients().binary_search(&p).is_ok();
    let f = inst.facilities().binary_search(&p).is_ok();
    match (c, f) {
        (true, true) => "both",
        (true, false) => "client",
        (false, true) => "facility",
        (false, false) => "none",
    }
}

pub fn write_instance(inst: &MetricInstance) -> String {
    let mut out = format!("{HEADER}\nk={}\nm={}\nz={}\n", inst.k(), inst.m(), inst.z());
    let oracle = inst.oracle();
    let n = oracle.len();
    match oracle {
        DistanceOracle::Euclidean { dim, coords } => {
            out.push_str(&format!("euclidean dim={dim}\n"));
            for i in 0..n {
                let p = PointId::from(i);
                out.push_str(&format!("{i},{},{}\n", role(inst, p), join(&coords[i * dim..(i + 1) * dim])));
            }
        }
        DistanceOracle::Matrix { .. } => {
            out.push_str(&format!("matrix n={n}\n"));
            out.push_str(&format!("roles={}\n", join((0..n).map(|i| role(inst, PointId::from(i))))));
            for i in 0..n {
                let row = (0..=i).map(|j| oracle.dist(PointId::from(i), PointId::from(j)));
                out.push_str(&join(row));
                out.push('\n');
            }
        }
    }
    out
}

fn assign(line: usize, id: usize, role: &str, clients: &mut Vec<PointId>, facilities: &mut Vec<PointId>) -> FormatResult<()> {
    let p = PointId::from(id);
    match role {
        "client" => clients.push(p),
        "facility" => facilities.push(p),
        "both" => {
            clients.push(p);
            facilities.push(p);
        }
        "none" => {}
        other => return fail(line, format!("unknown role `{other}`")),
    }
    Ok(())
}

pub fn read_instance(text: &str) -> FormatResult<MetricInstance> {
    let mut lines = Lines::new(text);
    lines.header(HEADER)?;
    let (kl, k) = lines.key("k")?;
    let k: usize = parse(kl, k, "k")?;
    let (ml, m) = lines.key("m")?;
    let m: usize = parse(ml, m, "m")?;
    let (zl, z) = lines.key("z")?;
    let z: f64 = parse(zl, z, "z")?;
    let (bl, backend) = lines.expect("`euclidean dim=` or `matrix n=`")?;
    let (mut clients, mut facilities) = (Vec::new(), Vec::new());
    let oracle = if let Some(dim) = backend.strip_prefix("euclidean dim=") {
        let dim: usize = parse(bl, dim, "dimension")?;
        let mut coords = Vec::new();
        let mut next = 0;
        while let Some((n, line)) = lines.next_line() {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 2 + dim {
                return fail(n, format!("expected id, role and {dim} coordinates"));
            }
            let id: usize = parse(n, fields[0], "point id")?;
            if id != next {
                return fail(n, format!("expected point id {next}, found {id}"));
            }
            assign(n, id, fields[1].trim(), &mut clients, &mut facilities)?;
            for f in &fields[2..] {
                coords.push(parse::<f64>(n, f, "coordinate")?);
            }
            next += 1;
        }
        DistanceOracle::euclidean(dim, coords).or_else(|e| fail(bl, e.to_string()))?
    } else if let Some(n) = backend.strip_prefix("matrix n=") {
        let n: usize = parse(bl, n, "point count")?;
        let (rl, roles) = lines.key("roles")?;
        let roles: Vec<&str> = if roles.is_empty() { Vec::new() } else { roles.split(',').collect() };
        if roles.len() != n {
            return fail(rl, format!("expected {n} roles, found {}", roles.len()));
        }
        for (i, r) in roles.iter().enumerate() {
            assign(rl, i, r.trim(), &mut clients, &mut facilities)?;
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let (ln, line) = lines.expect("a matrix row")?;
            let row: Vec<f64> = super::parse_list(ln, line, "distance")?;
            if row.len() != i + 1 {
                return fail(ln, format!("row {i} needs {} entries", i + 1));
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next_line() {
            return fail(ln, "trailing content after the matrix");
        }
        DistanceOracle::from_lower_triangular(&rows).or_else(|e| fail(bl, e.to_string()))?
    } else {
        return fail(bl, format!("unknown backend `{backend}`"));
    };
    MetricInstance::new(Arc::new(oracle), clients, facilities, k, m, z).or_else(|e| fail(bl, e.to_string()))
}
