//! Text, CSV, LaTeX and SVG renderings.

use std::fmt::Write as _;

use klstab_core::klregions::{classify_region, RegionFlags};
use klstab_core::lowrank::{rank3_table, ChainMarker, ChainRelation, Rank2Chain, Rank3Table};
use klstab_core::{CurveParams, Result, KL};

/// `2g`, `2g-1`, ... for a bound `2g + offset`.
fn symbolic_bound(g: i64, bound: i64) -> String {
    match bound - 2 * g {
        0 => "2g".to_string(),
        off if off < 0 => format!("2g{off}"),
        off => format!("2g+{off}"),
    }
}

pub fn rank3_text(t: &Rank3Table) -> String {
    let g = t.genus;
    let mut out = format!(
        "A_(k,l)(3,d) nonempty iff, for g = {g} (g = {} mod 3):\n",
        g.rem_euclid(3)
    );
    for r in &t.rows {
        let _ = writeln!(
            out,
            "d = {} mod 3: 2k+l < {} ({}), k+2l < {} ({})",
            r.d_mod_3,
            r.bound_2k_plus_l,
            symbolic_bound(g, r.bound_2k_plus_l),
            r.bound_k_plus_2l,
            symbolic_bound(g, r.bound_k_plus_2l),
        );
    }
    out
}

pub fn rank3_csv(t: &Rank3Table) -> String {
    let g = t.genus;
    let mut out = String::from(
        "g,g_mod_3,d_mod_3,bound_2k_plus_l,bound_k_plus_2l,symbolic_2k_plus_l,symbolic_k_plus_2l\n",
    );
    for r in &t.rows {
        let _ = writeln!(
            out,
            "{g},{},{},{},{},{},{}",
            g.rem_euclid(3),
            r.d_mod_3,
            r.bound_2k_plus_l,
            r.bound_k_plus_2l,
            symbolic_bound(g, r.bound_2k_plus_l),
            symbolic_bound(g, r.bound_k_plus_2l),
        );
    }
    out
}

/// Table layout with one column per residue of `g` mod 3, symbolic cells
/// `2k+l< 2g-1,` / `k+2l<2g.`, computed from `g`, `g+1`, `g+2`. The numeric
/// bounds for `g` itself lead as comments.
pub fn rank3_latex(curve: CurveParams) -> Result<String> {
    let g = curve.genus();
    let mut columns: [Option<Rank3Table>; 3] = [None, None, None];
    for h in g..g + 3 {
        columns[h.rem_euclid(3) as usize] = Some(rank3_table(CurveParams::new(h)?));
    }
    let columns: Vec<Rank3Table> = columns.into_iter().flatten().collect();

    let mut out = String::new();
    for r in &rank3_table(curve).rows {
        let _ = writeln!(
            out,
            "% g = {g}, d = {} mod 3: 2k+l < {}, k+2l < {}",
            r.d_mod_3, r.bound_2k_plus_l, r.bound_k_plus_2l
        );
    }
    out.push_str("\\begin{tabular}{|cc||*{5}{c|}}\\hline\n");
    out.push_str(
        "&& $g\\equiv 0\\mod 3$ & $g\\equiv 1\\mod 3$ & $g\\equiv 2\\mod 3$  \\\\ \\hline\n",
    );
    let iff = "$A_{(k,l)}(3,d)\\neq\\emptyset$ iff";
    for d in 0..3 {
        out.push_str("&&&&\\\\\n");
        let _ = writeln!(out, "&&{iff} &{iff} &{iff} \\\\");
        out.push_str("&&&&\\\\\n");
        let cells =
            |f: &dyn Fn(&Rank3Table) -> String| -> Vec<String> { columns.iter().map(f).collect() };
        let first = cells(&|t| {
            format!(
                "$2k+l< {},$",
                symbolic_bound(t.genus, t.rows[d].bound_2k_plus_l)
            )
        });
        let second = cells(&|t| {
            format!(
                "$k+2l<{}.$",
                symbolic_bound(t.genus, t.rows[d].bound_k_plus_2l)
            )
        });
        let _ = writeln!(out, "$d\\equiv {d}\\mod 3$ &&{}\\\\", first.join(" &"));
        let _ = writeln!(out, " &&{} \\\\", second.join(" &"));
        out.push_str("&&&&\\\\ \\hline\n");
    }
    out.push_str("\\end{tabular}\n");
    Ok(out)
}

pub fn chain_text(c: &Rank2Chain) -> String {
    let mut out = format!("rank 2, degree {}, genus {}\n", c.degree, c.genus);
    for link in &c.links {
        let rel = match link.relation {
            None => "top",
            Some(ChainRelation::Equal) => "A_t = A_(t+1)",
            Some(ChainRelation::StrictlyContains) => "A_t > A_(t+1)",
        };
        let markers: Vec<&str> = link
            .markers
            .iter()
            .map(|m| match m {
                ChainMarker::FirstEmpty => "first empty",
                ChainMarker::EqualsModuli => "= M(2,d)",
                ChainMarker::IndecomposableFloor => "all indecomposables",
            })
            .collect();
        let _ = writeln!(
            out,
            "t = {:>4}  {:<8}  {:<14}  {}",
            link.t,
            if link.nonempty { "nonempty" } else { "empty" },
            rel,
            markers.join(", ")
        );
    }
    out
}

const CELL: i64 = 14;
const MARGIN: i64 = 40;
const LEGEND_HEIGHT: i64 = 110;

const REGION_STYLE: [(&str, &str); 6] = [
    ("R0", "#d73027"),
    ("R1", "#1a9850"),
    ("R2", "#4575b4"),
    ("R3k", "#fdae61"),
    ("R3l", "#984ea3"),
    ("none", "#e0e0e0"),
];

fn region_index(f: &RegionFlags) -> (usize, bool) {
    let hits = [f.in_r0, f.in_r1, f.in_r2, f.in_r3k, f.in_r3l];
    let count = hits.iter().filter(|&&h| h).count();
    let first = hits.iter().position(|&h| h).unwrap_or(5);
    (first, count > 1)
}

/// Clips `a*k + b*l = c` to the square `|k|, |l| <= w`.
fn clip_line(a: i64, b: i64, c: i64, w: i64) -> Option<((f64, f64), (f64, f64))> {
    let (a, b, c, w) = (a as f64, b as f64, c as f64, w as f64);
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let inside = |v: f64| v >= -w - 1e-9 && v <= w + 1e-9;
    if b != 0.0 {
        for k in [-w, w] {
            let l = (c - a * k) / b;
            if inside(l) {
                pts.push((k, l));
            }
        }
    }
    if a != 0.0 {
        for l in [-w, w] {
            let k = (c - b * l) / a;
            if inside(k) {
                pts.push((k, l));
            }
        }
    }
    pts.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    pts.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    match (pts.first(), pts.last()) {
        (Some(&p), Some(&q)) if pts.len() >= 2 => Some((p, q)),
        _ => None,
    }
}

/// Lattice window `|k|, |l| <= window` colored by region, with the boundary
/// lines `k(n-1)+l = c` and `k+(n-1)l = c` for `c in {0, (n-1)(g-1), (n-1)g}`.
pub fn regions_svg(n: i64, g: i64, window: i64) -> Result<String> {
    let w = window;
    let side = 2 * w * CELL;
    let width = side + 2 * MARGIN;
    let height = side + 2 * MARGIN + LEGEND_HEIGHT;
    let x = |k: f64| MARGIN as f64 + (k + w as f64) * CELL as f64;
    let y = |l: f64| MARGIN as f64 + (w as f64 - l) * CELL as f64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        out,
        r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="24" font-size="14">Regions of the (k,l) plane, n = {n}, g = {g}</text>"#
    );

    // axes
    let _ = writeln!(
        out,
        r##"<g stroke="#999999" stroke-width="1"><line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/><line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/></g>"##,
        x(-w as f64),
        y(0.0),
        x(w as f64),
        y(0.0),
        x(0.0),
        y(-w as f64),
        x(0.0),
        y(w as f64),
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}">k</text>"#,
        x(w as f64) + 6.0,
        y(0.0) + 4.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}">l</text>"#,
        x(0.0) - 3.0,
        y(w as f64) - 8.0
    );

    // boundary lines
    let levels = [0, (n - 1) * (g - 1), (n - 1) * g];
    out.push_str("<g stroke-width=\"1.2\" fill=\"none\">\n");
    for (a, b, dash) in [(n - 1, 1, ""), (1, n - 1, " stroke-dasharray=\"5,3\"")] {
        for c in levels {
            if let Some((p, q)) = clip_line(a, b, c, w) {
                let _ = writeln!(
                    out,
                    r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#333333"{dash}><title>{a}k+{b}l={c}</title></line>"##,
                    x(p.0),
                    y(p.1),
                    x(q.0),
                    y(q.1)
                );
            }
        }
    }
    out.push_str("</g>\n");

    // lattice points
    out.push_str("<g>\n");
    for l in (-w..=w).rev() {
        for k in -w..=w {
            let flags = classify_region(n, g, KL::new(k, l))?;
            let (idx, overlap) = region_index(&flags);
            let stroke = if overlap {
                r##" stroke="#000000" stroke-width="1.5""##
            } else {
                ""
            };
            let _ = writeln!(
                out,
                r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{}"{stroke}/>"#,
                x(k as f64),
                y(l as f64),
                REGION_STYLE[idx].1
            );
        }
    }
    out.push_str("</g>\n");

    // legend
    let top = side + 2 * MARGIN;
    for (i, (name, color)) in REGION_STYLE.iter().enumerate() {
        let ly = top + 14 * i as i64;
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="{color}"/><text x="{}" y="{}">{name}</text>"#,
            MARGIN,
            ly,
            MARGIN + 10,
            ly + 4
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}">outlined: several regions; solid lines: {}k+l = c; dashed: k+{}l = c; c in {{{}, {}, {}}}</text>"#,
        MARGIN + 80,
        top + 4,
        n - 1,
        n - 1,
        levels[0],
        levels[1],
        levels[2]
    );
    out.push_str("</svg>\n");
    Ok(out)
}
