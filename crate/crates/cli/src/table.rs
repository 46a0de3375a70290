//! Plain-text result tables.

use qkb_core::sparql::SolutionSequence;
use qkb_core::{PrefixMap, Term};

/// Literals longer than this are cut and marked with `…`.
pub const MAX_LITERAL_CHARS: usize = 60;
pub const FALLBACK_WIDTH: usize = 100;
const MIN_COLUMN: usize = 8;

/// Terminal width, else `$COLUMNS`, else [`FALLBACK_WIDTH`].
pub fn terminal_width() -> usize {
    if let Some((terminal_size::Width(w), _)) = terminal_size::terminal_size() {
        return usize::from(w);
    }
    std::env::var("COLUMNS").ok().and_then(|c| c.parse().ok()).filter(|&w| w > 0).unwrap_or(FALLBACK_WIDTH)
}

pub fn truncate(text: &str, max: usize) -> String {
    if text.chars().count() <= max {
        return text.to_string();
    }
    let mut out: String = text.chars().take(max.saturating_sub(1).max(1)).collect();
    out.push('…');
    out
}

/// Display form of one cell: compact IRIs, bare literal text with control
/// characters flattened to spaces.
pub fn cell(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(iri) => prefixes.compact(iri),
        literal => {
            let text: String = literal.literal_text().unwrap_or("").chars().map(|c| if c.is_control() { ' ' } else { c }).collect();
            if text.chars().count() > MAX_LITERAL_CHARS {
                let mut cut: String = text.chars().take(MAX_LITERAL_CHARS).collect();
                cut.push('…');
                cut
            } else {
                text
            }
        }
    }
}

/// Renders `solutions` as a `|`-separated table no wider than `width`
/// where possible, followed by a row count.
pub fn render(solutions: &SolutionSequence, prefixes: &PrefixMap, width: usize) -> String {
    let header: Vec<String> = solutions.vars.iter().map(|v| v.name().to_string()).collect();
    let rows: Vec<Vec<String>> = solutions
        .rows
        .iter()
        .map(|row| solutions.vars.iter().map(|v| row.get(v).map(|t| cell(t, prefixes)).unwrap_or_default()).collect())
        .collect();

    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    // "| a | b |": 3 per column plus the closing bar
    let total = |widths: &[usize]| widths.iter().map(|w| w + 3).sum::<usize>() + 1;
    while total(&widths) > width {
        let (idx, &widest) = widths.iter().enumerate().max_by_key(|(_, w)| **w).unwrap_or((0, &0));
        if widest <= MIN_COLUMN {
            break;
        }
        widths[idx] = widest.saturating_sub(total(&widths) - width).max(MIN_COLUMN);
    }

    let line = |cells: &[String]| {
        let mut out = String::from("|");
        for (c, w) in cells.iter().zip(&widths) {
            let c = truncate(c, *w);
            out.push(' ');
            out.push_str(&c);
            out.push_str(&" ".repeat(w - c.chars().count() + 1));
            out.push('|');
        }
        out.push('\n');
        out
    };
    let mut out = line(&header);
    out.push('|');
    for w in &widths {
        out.push_str(&"-".repeat(w + 2));
        out.push('|');
    }
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row));
    }
    let n = rows.len();
    out.push_str(&format!("({n} row{})\n", if n == 1 { "" } else { "s" }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qkb_core::model::vocab::{self, qreg};
    use qkb_core::model::Variable;

    fn seq(rows: Vec<Vec<(&str, Term)>>, vars: &[&str]) -> SolutionSequence {
        SolutionSequence {
            vars: vars.iter().map(|v| Variable::new(*v).unwrap()).collect(),
            rows: rows.into_iter().map(|r| r.into_iter().map(|(v, t)| (Variable::new(v).unwrap(), t)).collect()).collect(),
        }
    }

    #[test]
    fn single_cell() {
        let s = seq(vec![vec![("Answer", Term::Iri(qreg("Sea")))]], &["Answer"]);
        assert_eq!(render(&s, &vocab::corpus_prefixes(), 100), "| Answer   |\n|----------|\n| qreg:Sea |\n(1 row)\n");
    }

    #[test]
    fn long_literals_are_cut_at_sixty() {
        let text = "And [recall] when We took your covenant and raised over you the mount";
        let c = cell(&Term::lang(text, "en").unwrap(), &PrefixMap::new());
        assert_eq!(c.chars().count(), 61);
        assert!(c.ends_with('…'));
        assert!(text.starts_with(c.trim_end_matches('…')));
    }

    #[test]
    fn fits_narrow_terminals() {
        let long = "x".repeat(60);
        let s = seq(vec![vec![("a", Term::plain(long.clone())), ("b", Term::plain(long))]], &["a", "b"]);
        let out = render(&s, &PrefixMap::new(), 50);
        assert!(out.lines().all(|l| l.chars().count() <= 50), "{out}");
        let wide = render(&s, &PrefixMap::new(), 200);
        assert!(wide.lines().next().unwrap().chars().count() > 100);
    }

    #[test]
    fn unbound_cells_are_blank() {
        let s = seq(vec![vec![("a", Term::plain("x"))]], &["a", "b"]);
        assert!(render(&s, &PrefixMap::new(), 100).contains("| x | "));
    }
}
