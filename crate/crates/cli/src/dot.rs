//! Graphviz output for exchange matrices.

use std::fmt::Write;

use mutfin_core::ExchangeMatrix;

/// Mutable vertices `1..n` are circles, frozen rows `f1..` are boxes. An arrow
/// `i -> j` is drawn for every `b_ij > 0` and labeled `(b_ij,-b_ji)`; arrows
/// at frozen rows use the same entry twice.
pub fn to_dot(m: &ExchangeMatrix) -> String {
    let n = m.n();
    let name = |v: usize| if v < n { format!("{}", v + 1) } else { format!("f{}", v - n + 1) };
    let mut out = String::from("digraph quiver {\n");
    for v in 0..m.m() {
        let shape = if v < n { "circle" } else { "box" };
        let _ = writeln!(out, "  \"{}\" [shape={shape}];", name(v));
    }
    for i in 0..m.m() {
        for j in 0..n {
            let b = m.get(i, j);
            let (tail, head, label) = if i < n {
                if b <= 0 {
                    continue;
                }
                (i, j, (b, -m.get(j, i)))
            } else if b > 0 {
                (i, j, (b, b))
            } else if b < 0 {
                (j, i, (-b, -b))
            } else {
                continue;
            };
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"({},{})\"];", name(tail), name(head), label.0, label.1);
        }
    }
    out.push_str("}\n");
    out
}
