use std::fmt::Write;

use chowkit_core::equivariant::{Parity, WeightMatrix};
use chowkit_core::hyperelliptic::VerificationReport;
use chowkit_core::Presentation;

pub fn presentation(g: u32, parity: Parity, pres: &Presentation) -> String {
    format!("genus {g} ({parity}): {pres}\n")
}

pub fn report(r: &VerificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "genus {} ({}), degrees 0..={}, assuming {}", r.g, r.parity, r.max_degree, r.char_hypothesis).unwrap();
    writeln!(s, "image:  ({})", r.generators.image.join(", ")).unwrap();
    writeln!(s, "stated: ({})", r.generators.stated.join(", ")).unwrap();
    let rows: Vec<[String; 4]> = r
        .per_degree
        .iter()
        .map(|c| {
            [
                c.d.to_string(),
                if c.equal { "yes" } else { "NO" }.to_string(),
                c.image_factors.to_string(),
                c.stated_factors.to_string(),
            ]
        })
        .collect();
    let header = ["d".to_string(), "equal".into(), "image quotient".into(), "stated quotient".into()];
    let widths: Vec<usize> = (0..4)
        .map(|k| rows.iter().chain([&header]).map(|r| r[k].chars().count()).max().unwrap_or(0))
        .collect();
    for row in [&header].into_iter().chain(&rows) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(s, "{}", cells.join("  ").trim_end()).unwrap();
    }
    match r.first_discrepancy {
        None => writeln!(s, "ideals agree through degree {}", r.max_degree).unwrap(),
        Some(d) => writeln!(s, "ideals differ; first discrepancy in degree {d}").unwrap(),
    }
    s
}

pub fn weights(g: u32, table: &WeightMatrix, consistent: bool) -> String {
    let mut s = String::new();
    writeln!(s, "genus {g} ({})", Parity::of(g)).unwrap();
    for row in table.rows() {
        let w: Vec<String> = row.weights.iter().map(|x| x.to_string()).collect();
        writeln!(s, "{:<4} ({})", row.label, w.join(", ")).unwrap();
    }
    writeln!(s, "2*weight(s) = weight(a_N): {}", if consistent { "yes" } else { "NO" }).unwrap();
    s
}

pub fn identity(results: &[(u32, bool)]) -> String {
    let mut s = String::new();
    for (g, ok) in results {
        writeln!(s, "g = {g}: {}", if *ok { "identical generators" } else { "generators differ" }).unwrap();
    }
    s
}
