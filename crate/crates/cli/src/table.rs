//! Plain-text table rendering with deterministic column widths.

/// Render left-aligned columns separated by two spaces, one header row, no
/// trailing whitespace; every row must have `headers.len()` cells.
pub fn render(headers: &[&str], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        assert_eq!(row.len(), cols, "ragged table row");
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[i] - cell.chars().count();
            if i + 1 < cols {
                line.extend(std::iter::repeat(' ').take(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    emit(&mut out, &headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        emit(&mut out, row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::render;

    #[test]
    fn columns_align_and_lines_end_clean() {
        let out = render(
            &["a", "label"],
            &[
                vec!["1".into(), "x".into()],
                vec!["10".into(), "longer".into()],
            ],
        );
        assert_eq!(out, "a   label\n1   x\n10  longer\n");
        assert!(!out.lines().any(|l| l.ends_with(' ')));
    }
}
