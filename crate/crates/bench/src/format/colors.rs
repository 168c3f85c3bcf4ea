//! ```text
//! colors v1
//! budgets=1,0
//! 0,0
//! 3,1
//! ```

use std::collections::BTreeMap;

use kmout_core::{Coloring, PointId};

use super::{fail, join, parse, parse_list, FormatResult, Lines};

const HEADER: &str = "colors v1";

pub fn write_colors(coloring: &Coloring) -> String {
    let mut out = format!("{HEADER}\nbudgets={}\n", join(coloring.budgets()));
    for (p, c) in coloring.colors() {
        out.push_str(&format!("{p},{c}\n"));
    }
    out
}

pub fn read_colors(text: &str) -> FormatResult<Coloring> {
    let mut lines = Lines::new(text);
    lines.header(HEADER)?;
    let (bl, budgets) = lines.key("budgets")?;
    let budgets: Vec<usize> = parse_list(bl, budgets, "budget")?;
    let mut colors = BTreeMap::new();
    let mut last: Option<PointId> = None;
    while let Some((n, line)) = lines.next_line() {
        let Some((p, c)) = line.split_once(',') else {
            return fail(n, "expected `point_id,color`");
        };
        let p = PointId(parse(n, p, "point id")?);
        if last.is_some_and(|l| l >= p) {
            return fail(n, "point ids must be strictly increasing");
        }
        last = Some(p);
        colors.insert(p, parse(n, c, "color")?);
    }
    Coloring::new(colors, budgets).or_else(|e| fail(bl, e.to_string()))
}
