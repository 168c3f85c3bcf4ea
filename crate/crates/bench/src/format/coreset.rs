//! ```text
//! coreset v1
//! seed=17
//! s=4
//! radius=7.833333333333333
//! phi=2
//! tau=1
//! z=1
//! baseline=0,3
//! colored=false
//! 0,0,1,1
//! 0,2,5,3
//! ```
//! Entry lines are `center_index,band,point_id,weight`, with a trailing
//! `,color` when `colored=true`.

use kmout_core::{CoresetSnapshot, PointId};

use super::{fail, join, parse, parse_list, FormatResult, Lines};

const HEADER: &str = "coreset v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DumpEntry {
    pub center: usize,
    pub band: u32,
    pub point: PointId,
    pub weight: u64,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoresetDump {
    pub seed: u64,
    pub s: usize,
    pub radius: f64,
    pub phi: u32,
    pub tau: f64,
    pub z: f64,
    pub baseline: Vec<PointId>,
    pub colored: bool,
    pub entries: Vec<DumpEntry>,
}

impl CoresetDump {
    pub fn from_snapshot(snapshot: &CoresetSnapshot) -> Self {
        let coreset = &snapshot.coreset;
        let entries = coreset
            .union
            .entries
            .iter()
            .enumerate()
            .map(|(e, wp)| {
                let key = coreset.entry_key(e);
                DumpEntry { center: key.center, band: key.band, point: wp.point, weight: wp.weight, color: key.color }
            })
            .collect();
        CoresetDump {
            seed: snapshot.seed,
            s: snapshot.s,
            radius: snapshot.rings.radius,
            phi: snapshot.rings.phi,
            tau: snapshot.tau,
            z: snapshot.rings.z,
            baseline: snapshot.rings.baseline.clone(),
            colored: snapshot.rings.colors() > 1,
            entries,
        }
    }

    pub fn total_weight(&self) -> u64 {
        self.entries.iter().map(|e| e.weight).sum()
    }
}

pub fn write_coreset_dump(dump: &CoresetDump) -> String {
    let mut out = format!(
        "{HEADER}\nseed={}\ns={}\nradius={}\nphi={}\ntau={}\nz={}\nbaseline={}\ncolored={}\n",
        dump.seed,
        dump.s,
        dump.radius,
        dump.phi,
        dump.tau,
        dump.z,
        join(&dump.baseline),
        dump.colored
    );
    for e in &dump.entries {
        out.push_str(&format!("{},{},{},{}", e.center, e.band, e.point, e.weight));
        if dump.colored {
            out.push_str(&format!(",{}", e.color));
        }
        out.push('\n');
    }
    out
}

pub fn read_coreset_dump(text: &str) -> FormatResult<CoresetDump> {
    let mut lines = Lines::new(text);
    lines.header(HEADER)?;
    let (n, v) = lines.key("seed")?;
    let seed = parse(n, v, "seed")?;
    let (n, v) = lines.key("s")?;
    let s = parse(n, v, "s")?;
    let (n, v) = lines.key("radius")?;
    let radius = parse(n, v, "radius")?;
    let (n, v) = lines.key("phi")?;
    let phi = parse(n, v, "phi")?;
    let (n, v) = lines.key("tau")?;
    let tau = parse(n, v, "tau")?;
    let (n, v) = lines.key("z")?;
    let z = parse(n, v, "z")?;
    let (n, v) = lines.key("baseline")?;
    let baseline = parse_list::<u32>(n, v, "point id")?.into_iter().map(PointId).collect();
    let (n, v) = lines.key("colored")?;
    let colored: bool = parse(n, v, "flag")?;
    let width = if colored { 5 } else { 4 };
    let mut entries = Vec::new();
    while let Some((n, line)) = lines.next_line() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != width {
            return fail(n, format!("expected {width} fields"));
        }
        entries.push(DumpEntry {
            center: parse(n, fields[0], "center index")?,
            band: parse(n, fields[1], "band")?,
            point: PointId(parse(n, fields[2], "point id")?),
            weight: parse(n, fields[3], "weight")?,
            color: if colored { parse(n, fields[4], "color")? } else { 0 },
        });
    }
    Ok(CoresetDump { seed, s, radius, phi, tau, z, baseline, colored, entries })
}
