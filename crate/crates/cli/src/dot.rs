//! Graphviz export of a chain report: models as boxed nodes, one dashed edge
//! per flop pointing along the travel direction of the walk that crosses it
//! (the hilbert walk moves up in slope, the bm walk down), and a solid
//! self-loop marking the splice — the isometry that gives the doubly-named
//! chamber its second name.

use num::BigRational;

use k3walls::flop_chain::ChainReport;
use k3walls::wall_engine::Side;

pub fn render(report: &ChainReport) -> String {
    let mut out = String::new();
    out.push_str("digraph chain {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=box];\n");
    for (i, m) in report.models.iter().enumerate() {
        let label = match (&report.splice, m.spliced) {
            (Some(sp), true) => format!("{} = {}", sp.model, sp.alias),
            _ => m.name.clone(),
        };
        out.push_str(&format!("  m{i} [label=\"{label}\"];\n"));
    }

    // A step's wall sits between two slope-adjacent chambers; models are
    // listed by ascending chamber slope, so the sorted step slopes give each
    // step its boundary index.
    let mut boundaries: Vec<&BigRational> = report.steps.iter().map(|s| &s.wall.gamma).collect();
    boundaries.sort();
    for step in &report.steps {
        let i = boundaries
            .iter()
            .position(|g| *g == &step.wall.gamma)
            .expect("each step's slope is a boundary");
        let (from, to) = match step.wall.side {
            Side::Hilbert => (i, i + 1),
            Side::Middle | Side::Bm => (i + 1, i),
        };
        out.push_str(&format!(
            "  m{from} -> m{to} [label=\"{}\", style=dashed];\n",
            step.label
        ));
    }
    if let Some(k) = report.models.iter().position(|m| m.spliced) {
        out.push_str(&format!(
            "  m{k} -> m{k} [label=\"Φ_{}\", style=solid];\n",
            report.n
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::render;
    use k3walls::flop_chain::{build_chain, n1_report};
    use k3walls::mukai_lattice::Degree;

    #[test]
    fn d1_graph_has_all_edges_and_the_splice_loop() {
        let dot = render(&build_chain(Degree::new(1).unwrap()).unwrap());
        assert_eq!(dot.matches("style=dashed").count(), 4);
        assert_eq!(dot.matches("style=solid").count(), 1);
        assert!(dot.contains("[label=\"X_1 = cX_0\"]"));
        assert!(dot.contains("m0 -> m1 [label=\"f_2\""));
        // The bm walk travels down in slope: the step from M(0,2,-1).
        assert!(dot.contains("m4 -> m3 [label=\"g_1\""));
        // The middle step lands in the spliced chamber.
        assert!(dot.contains("m3 -> m2 [label=\"g_0\""));
        assert!(dot.contains("Φ_2"));
    }

    #[test]
    fn n1_graph_is_a_single_dashed_edge() {
        let dot = render(&n1_report(Degree::new(2).unwrap()).unwrap());
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert_eq!(dot.matches("style=solid").count(), 0);
        assert!(dot.contains("m1 -> m0 [label=\"g_0\""));
    }
}
