//! ```text
//! matroid v1
//! kind=uniform
//! rank=2
//! ground=4,5,6
//! ```
//! `kind=partition` is followed by `block=<capacity>:<members>` lines, and
//! `kind=explicit` by a `ground=` line and one `set=<members>` line per
//! independent set.

use kmout_core::{Matroid, PointId};
use kmout_core::extensions::matroid::PartitionBlock;

use super::{fail, join, parse, parse_list, FormatResult, Lines};

const HEADER: &str = "matroid v1";

/// Direct sums have no file form and yield `None`.
pub fn write_matroid(matroid: &Matroid) -> Option<String> {
    let mut out = format!("{HEADER}\n");
    match matroid {
        Matroid::Uniform { ground, rank } => {
            out.push_str(&format!("kind=uniform\nrank={rank}\nground={}\n", join(ground)));
        }
        Matroid::Partition { blocks } => {
            out.push_str("kind=partition\n");
            for b in blocks {
                out.push_str(&format!("block={}:{}\n", b.capacity, join(&b.members)));
            }
        }
        Matroid::Explicit { ground, independent } => {
            out.push_str(&format!("kind=explicit\nground={}\n", join(ground)));
            for set in independent {
                out.push_str(&format!("set={}\n", join(set)));
            }
        }
        Matroid::DirectSum { .. } => return None,
    }
    Some(out)
}

fn ids(line: usize, field: &str) -> FormatResult<Vec<PointId>> {
    Ok(parse_list::<u32>(line, field, "point id")?.into_iter().map(PointId).collect())
}

pub fn read_matroid(text: &str) -> FormatResult<Matroid> {
    let mut lines = Lines::new(text);
    lines.header(HEADER)?;
    let (kl, kind) = lines.key("kind")?;
    let built = match kind {
        "uniform" => {
            let (rl, rank) = lines.key("rank")?;
            let rank = parse(rl, rank, "rank")?;
            let (gl, ground) = lines.key("ground")?;
            Matroid::uniform(&ids(gl, ground)?, rank)
        }
        "partition" => {
            let mut blocks = Vec::new();
            while let Some((n, line)) = lines.next_line() {
                let Some(body) = line.strip_prefix("block=") else {
                    return fail(n, "expected `block=<capacity>:<members>`");
                };
                let Some((cap, members)) = body.split_once(':') else {
                    return fail(n, "expected `block=<capacity>:<members>`");
                };
                blocks.push(PartitionBlock { members: ids(n, members)?, capacity: parse(n, cap, "capacity")? });
            }
            Matroid::partition(blocks)
        }
        "explicit" => {
            let (gl, ground) = lines.key("ground")?;
            let ground = ids(gl, ground)?;
            let mut sets = Vec::new();
            while let Some((n, line)) = lines.next_line() {
                let Some(body) = line.strip_prefix("set=") else {
                    return fail(n, "expected `set=<members>`");
                };
                sets.push(ids(n, body)?);
            }
            Matroid::explicit(&ground, sets)
        }
        other => return fail(kl, format!("unknown matroid kind `{other}`")),
    };
    built.or_else(|e| fail(kl, e.to_string()))
}
