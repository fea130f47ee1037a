//! DOT export of subgroup lattices.

use std::fmt::Write as _;

use crate::cd::{self, CdReport};
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;

/// Hasse diagram as a DOT digraph, edges pointing from smaller to larger
/// subgroups. CD(G) members get a double border and the least member is
/// also filled.
pub fn export_dot(l: &SubgroupLattice, report: &CdReport) -> Result<String> {
    let hasse = l.hasse().ok_or_else(|| {
        Error::Unsupported(format!(
            "{} subgroups is above the Hasse diagram limit",
            l.len()
        ))
    })?;
    let min = cd::chermak_delgado_subgroup(report, l)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "digraph \"{}\" {{",
        l.group().label().replace('"', "'")
    );
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=ellipse];");
    for (id, row) in report.measures.iter().enumerate() {
        let mut attrs = format!("label=\"|H|={}, m={}\"", row.size, row.measure);
        if report.is_member(id) {
            attrs.push_str(", peripheries=2");
        }
        if id == min {
            attrs.push_str(", style=filled, fillcolor=lightgrey");
        }
        let _ = writeln!(out, "  s{id} [{attrs}];");
    }
    for &(lo, hi) in hasse {
        let _ = writeln!(out, "  s{lo} -> s{hi};");
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::cd_lattice;
    use crate::group::{make_cyclic, make_dicyclic};
    use crate::lattice::{all_subgroups, all_subgroups_with, LatticeOptions};

    #[test]
    fn cyclic_two() {
        let l = all_subgroups(&make_cyclic(2).unwrap()).unwrap();
        let dot = export_dot(&l, &cd_lattice(&l).unwrap()).unwrap();
        assert_eq!(dot.matches(" [label=").count(), 2);
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert!(dot.contains("s0 -> s1;"));
    }

    #[test]
    fn q8_diagram() {
        let l = all_subgroups(&make_dicyclic(2).unwrap()).unwrap();
        let dot = export_dot(&l, &cd_lattice(&l).unwrap()).unwrap();
        assert_eq!(dot.matches("peripheries=2").count(), 5);
        assert_eq!(dot.matches("style=filled").count(), 1);
        for edge in [
            "s0 -> s1", "s1 -> s2", "s1 -> s3", "s1 -> s4", "s2 -> s5", "s3 -> s5", "s4 -> s5",
        ] {
            assert!(dot.contains(edge), "{edge}");
        }
        assert_eq!(dot.matches(" -> ").count(), 7);
        assert!(dot.contains("s1 [label=\"|H|=2, m=16\", peripheries=2, style=filled"));
    }

    #[test]
    fn without_hasse_is_unsupported() {
        let opts = LatticeOptions {
            max_hasse: 1,
            ..Default::default()
        };
        let l = all_subgroups_with(&make_dicyclic(2).unwrap(), &opts).unwrap();
        let r = cd_lattice(&l).unwrap();
        assert!(matches!(export_dot(&l, &r), Err(Error::Unsupported(_))));
    }
}
