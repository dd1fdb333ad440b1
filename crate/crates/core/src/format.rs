//! Line-oriented text formats for Lie algebras and finite metric groups.
//!
//! ```text
//! lie_algebra heisenberg3
//! dim 3
//! basis e1 e2 e3
//! bracket [e1,e2] = 1*e3
//! metric identity
//! end
//! ```
//!
//! ```text
//! metric_group z2
//! order 2
//! elements 0 1
//! table
//! 0 1
//! 1 0
//! metric
//! 0 1
//! 1 0
//! end
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactla::{render_rat, Mat, Rat};
use crate::finite::FiniteMetricGroup;
use crate::invariants::MetricTensor;
use crate::lie::LieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{message}:\n  {}", transcript.join("\n  "))]
    Validation { message: String, transcript: Vec<String> },
}

/// A parsed Lie algebra file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieFile {
    pub algebra: LieAlgebra,
    /// `None` when the file has no `metric` block.
    pub metric: Option<MetricTensor>,
}

impl LieFile {
    /// The declared metric, or the identity on the basis.
    pub fn metric_or_identity(&self) -> MetricTensor {
        self.metric.clone().unwrap_or_else(|| MetricTensor::identity(self.algebra.dim()))
    }
}

/// Either kind of input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Lie(LieFile),
    Group(FiniteMetricGroup),
}

/// Tokens with their 1-based columns.
type Words<'a> = Vec<(usize, &'a str)>;

/// One non-empty line with comments removed.
#[derive(Debug, Clone)]
struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, message: impl Into<String>) -> FormatError {
        FormatError::Syntax { line: self.number, col, message: message.into() }
    }

    /// Whitespace-separated words with their 1-based columns.
    fn words(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push((s + 1, &self.text[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            (!body.trim().is_empty()).then_some(Line { number: i + 1, text: body.trim_end() })
        })
        .collect()
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let last_line = text.lines().count().max(1);
        Cursor { lines: lines(text), pos: 0, last_line }
    }

    fn next(&mut self, what: &str) -> Result<Line<'a>, FormatError> {
        let line = self.lines.get(self.pos).cloned().ok_or_else(|| FormatError::Syntax {
            line: self.last_line,
            col: 1,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    /// A line `<keyword> <args…>`; returns the argument words.
    fn keyword(&mut self, kw: &str) -> Result<(Line<'a>, Words<'a>), FormatError> {
        let line = self.next(&format!("`{kw}`"))?;
        let words = line.words();
        match words.first() {
            Some(&(_, w)) if w == kw => Ok((line.clone(), words[1..].to_vec())),
            Some(&(col, w)) => Err(line.err(col, format!("expected `{kw}`, found `{w}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        self.keyword("end")?;
        if let Some(extra) = self.peek() {
            return Err(extra.err(1, "unexpected content after `end`"));
        }
        Ok(())
    }
}

fn parse_count(line: &Line<'_>, args: &[(usize, &str)], what: &str) -> Result<usize, FormatError> {
    match args {
        [(col, w)] => w.parse().map_err(|_| line.err(*col, format!("invalid {what} `{w}`"))),
        [] => Err(line.err(line.text.len() + 1, format!("missing {what}"))),
        [_, (col, _), ..] => Err(line.err(*col, "unexpected extra token")),
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    if s.is_empty() || s.contains(char::is_whitespace) {
        return None;
    }
    Rat::from_str(s).ok()
}

fn rat_word(line: &Line<'_>, col: usize, w: &str) -> Result<Rat, FormatError> {
    parse_rat(w).ok_or_else(|| line.err(col, format!("invalid rational `{w}`")))
}

fn is_ident(w: &str) -> bool {
    let mut chars = w.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_rows(cur: &mut Cursor<'_>, n: usize, what: &str) -> Result<Vec<Vec<Rat>>, FormatError> {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = cur.next(&format!("{what} row"))?;
        let words = line.words();
        if words.len() != n {
            let col = words.get(n).map_or(line.text.len() + 1, |w| w.0);
            return Err(line.err(col, format!("expected {n} entries, found {}", words.len())));
        }
        rows.push(words.iter().map(|&(c, w)| rat_word(&line, c, w)).collect::<Result<_, _>>()?);
    }
    Ok(rows)
}

/// Parses the body of a `metric` block (`identity` or `rows` + `n` lines).
fn parse_metric_block(
    cur: &mut Cursor<'_>,
    line: &Line<'_>,
    args: &[(usize, &str)],
    n: usize,
) -> Result<MetricTensor, FormatError> {
    let q = match args {
        [(_, "identity")] => Mat::identity(n),
        [(_, "rows")] => {
            let rows = parse_rows(cur, n, "metric")?;
            Mat::from_rows(n, &rows).expect("rows have length n")
        }
        [(col, w), ..] => return Err(line.err(*col, format!("expected `identity` or `rows`, found `{w}`"))),
        [] => return Err(line.err(line.text.len() + 1, "expected `identity` or `rows`")),
    };
    MetricTensor::new(q).map_err(|e| FormatError::Validation {
        message: "invalid metric".into(),
        transcript: vec![e.to_string()],
    })
}

/// Parses the right-hand side of a bracket line into `(basis index, coefficient)` terms.
fn parse_terms(
    line: &Line<'_>,
    rhs: &str,
    offset: usize,
    index: &HashMap<&str, usize>,
) -> Result<Vec<(usize, Rat)>, FormatError> {
    // split into tokens: '+', '-', '*', and words
    let mut toks: Vec<(usize, String)> = Vec::new();
    let mut word = String::new();
    let mut word_start = 0;
    for (i, ch) in rhs.char_indices() {
        let col = offset + i;
        if ch == '+' || ch == '-' || ch == '*' || ch.is_whitespace() {
            if !word.is_empty() {
                toks.push((word_start, std::mem::take(&mut word)));
            }
            if !ch.is_whitespace() {
                toks.push((col, ch.to_string()));
            }
        } else {
            if word.is_empty() {
                word_start = col;
            }
            word.push(ch);
        }
    }
    if !word.is_empty() {
        toks.push((word_start, word));
    }
    if toks.is_empty() {
        return Err(line.err(offset, "missing right-hand side"));
    }

    let mut terms = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = Rat::one();
        if !first {
            match toks[i].1.as_str() {
                "+" => {}
                "-" => sign = -sign,
                other => return Err(line.err(toks[i].0, format!("expected `+` or `-`, found `{other}`"))),
            }
            i += 1;
        }
        first = false;
        while let Some((_, t)) = toks.get(i) {
            match t.as_str() {
                "-" => sign = -sign,
                "+" => {}
                _ => break,
            }
            i += 1;
        }
        let (col, w) = toks.get(i).cloned().ok_or_else(|| line.err(offset + rhs.len(), "dangling operator"))?;
        i += 1;
        let (coef, id_tok) = if toks.get(i).is_some_and(|t| t.1 == "*") {
            let c = rat_word(line, col, &w)?;
            i += 1;
            let id = toks.get(i).cloned().ok_or_else(|| line.err(offset + rhs.len(), "missing basis element after `*`"))?;
            i += 1;
            (c, Some(id))
        } else if is_ident(&w) {
            (Rat::one(), Some((col, w)))
        } else {
            let c = rat_word(line, col, &w)?;
            if !c.is_zero() {
                return Err(line.err(col, "a bare constant must be 0"));
            }
            (c, None)
        };
        if let Some((idcol, id)) = id_tok {
            let k = *index.get(id.as_str()).ok_or_else(|| line.err(idcol, format!("unknown basis element `{id}`")))?;
            terms.push((k, sign * coef));
        }
    }
    Ok(terms)
}

pub fn parse_lie(text: &str) -> Result<LieFile, FormatError> {
    let mut cur = Cursor::new(text);
    let (line, args) = cur.keyword("lie_algebra")?;
    let name = match args.as_slice() {
        [(_, n)] => n.to_string(),
        [] => return Err(line.err(line.text.len() + 1, "missing algebra name")),
        [_, (col, _), ..] => return Err(line.err(*col, "unexpected extra token")),
    };
    let (line, args) = cur.keyword("dim")?;
    let dim = parse_count(&line, &args, "dimension")?;
    let (line, args) = cur.keyword("basis")?;
    if args.len() != dim {
        return Err(line.err(1, format!("dim is {dim} but {} basis elements are listed", args.len())));
    }
    let mut index = HashMap::new();
    for (k, &(col, id)) in args.iter().enumerate() {
        if !is_ident(id) {
            return Err(line.err(col, format!("invalid basis name `{id}`")));
        }
        if index.insert(id, k).is_some() {
            return Err(line.err(col, format!("duplicate basis name `{id}`")));
        }
    }
    let names: Vec<String> = args.iter().map(|&(_, w)| w.to_string()).collect();

    let mut brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
    let mut metric = None;
    while let Some(peek) = cur.peek() {
        let words = peek.words();
        match words[0].1 {
            "bracket" => {
                let line = cur.next("bracket")?;
                let rest_start = line.text.find("bracket").expect("keyword present") + "bracket".len();
                let rest = &line.text[rest_start..];
                let open = rest.find('[').ok_or_else(|| line.err(rest_start + 1, "expected `[`"))?;
                let close = rest.find(']').ok_or_else(|| line.err(rest_start + open + 1, "expected `]`"))?;
                let inner = &rest[open + 1..close];
                let comma = inner.find(',').ok_or_else(|| line.err(rest_start + open + 2, "expected `,` in bracket"))?;
                let a = inner[..comma].trim();
                let b = inner[comma + 1..].trim();
                let col_a = rest_start + open + 2;
                let col_b = rest_start + open + comma + 3;
                let i = *index.get(a).ok_or_else(|| line.err(col_a, format!("unknown basis element `{a}`")))?;
                let j = *index.get(b).ok_or_else(|| line.err(col_b, format!("unknown basis element `{b}`")))?;
                if i >= j {
                    return Err(line.err(col_a, format!("bracket [{a},{b}] must list basis elements in basis order")));
                }
                let after = &rest[close + 1..];
                let eq = after.find('=').ok_or_else(|| line.err(rest_start + close + 2, "expected `=`"))?;
                let rhs_off = rest_start + close + 1 + eq + 1;
                let rhs = &after[eq + 1..];
                let terms = parse_terms(&line, rhs, rhs_off + 1, &index)?;
                if brackets.insert((i, j), terms).is_some() {
                    return Err(line.err(col_a, format!("bracket [{a},{b}] given twice")));
                }
            }
            "metric" => {
                let (line, args) = cur.keyword("metric")?;
                if metric.is_some() {
                    return Err(line.err(1, "metric given twice"));
                }
                metric = Some(parse_metric_block(&mut cur, &line, &args, dim)?);
            }
            "end" => break,
            other => return Err(peek.err(words[0].0, format!("unexpected `{other}`"))),
        }
    }
    cur.finish()?;

    let algebra = LieAlgebra::new(name, names, brackets).map_err(|e| FormatError::Validation {
        message: "invalid structure constants".into(),
        transcript: vec![e.to_string()],
    })?;
    let violations = algebra.validate();
    if !violations.is_empty() {
        return Err(FormatError::Validation {
            message: format!("`{}` is not a Lie algebra", algebra.name()),
            transcript: violations.iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(LieFile { algebra, metric })
}

/// Parses a standalone metric block, as passed with `--metric`.
pub fn parse_metric(text: &str, dim: usize) -> Result<MetricTensor, FormatError> {
    let mut cur = Cursor::new(text);
    let (line, args) = cur.keyword("metric")?;
    let m = parse_metric_block(&mut cur, &line, &args, dim)?;
    if cur.peek().is_some_and(|l| l.words()[0].1 == "end") {
        cur.pos += 1;
    }
    if let Some(extra) = cur.peek() {
        return Err(extra.err(1, "unexpected content after metric"));
    }
    Ok(m)
}

pub fn parse_fmg(text: &str) -> Result<FiniteMetricGroup, FormatError> {
    let mut cur = Cursor::new(text);
    let (line, args) = cur.keyword("metric_group")?;
    let name = match args.as_slice() {
        [(_, n)] => n.to_string(),
        [] => return Err(line.err(line.text.len() + 1, "missing group name")),
        [_, (col, _), ..] => return Err(line.err(*col, "unexpected extra token")),
    };
    let (line, args) = cur.keyword("order")?;
    let order = parse_count(&line, &args, "order")?;
    if order == 0 {
        return Err(line.err(args[0].0, "order must be positive"));
    }
    let (line, args) = cur.keyword("elements")?;
    if args.len() != order {
        return Err(line.err(1, format!("order is {order} but {} elements are listed", args.len())));
    }
    let mut index = HashMap::new();
    for (k, &(col, id)) in args.iter().enumerate() {
        if index.insert(id, k).is_some() {
            return Err(line.err(col, format!("duplicate element `{id}`")));
        }
    }
    let labels: Vec<String> = args.iter().map(|&(_, w)| w.to_string()).collect();

    let (line, args) = cur.keyword("table")?;
    if let Some(&(col, _)) = args.first() {
        return Err(line.err(col, "unexpected token after `table`"));
    }
    let mut table = Vec::with_capacity(order);
    for _ in 0..order {
        let line = cur.next("table row")?;
        let words = line.words();
        if words.len() != order {
            return Err(line.err(1, format!("expected {order} entries, found {}", words.len())));
        }
        let row = words
            .iter()
            .map(|&(col, w)| index.get(w).copied().ok_or_else(|| line.err(col, format!("unknown element `{w}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    let (line, args) = cur.keyword("metric")?;
    if let Some(&(col, _)) = args.first() {
        return Err(line.err(col, "unexpected token after `metric`"));
    }
    let dist = parse_rows(&mut cur, order, "metric")?;
    cur.finish()?;

    let g = FiniteMetricGroup { name, labels, identity: 0, table, dist };
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(FormatError::Validation {
            message: format!("`{}` is not a metric group", g.name),
            transcript: violations.iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(g)
}

/// Dispatches on the first keyword.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let first = lines(text).into_iter().next();
    match first.as_ref().and_then(|l| l.words().first().map(|w| w.1)) {
        Some("lie_algebra") => parse_lie(text).map(Document::Lie),
        Some("metric_group") => parse_fmg(text).map(Document::Group),
        Some(other) => Err(FormatError::Syntax {
            line: first.as_ref().map_or(1, |l| l.number),
            col: 1,
            message: format!("expected `lie_algebra` or `metric_group`, found `{other}`"),
        }),
        None => Err(FormatError::Syntax { line: 1, col: 1, message: "empty input".into() }),
    }
}

fn write_rows(out: &mut String, rows: impl Iterator<Item = Vec<String>>) {
    for r in rows {
        writeln!(out, "{}", r.join(" ")).expect("write to string");
    }
}

pub fn serialize_lie(g: &LieAlgebra, metric: Option<&MetricTensor>) -> String {
    let mut out = String::new();
    let names = g.basis_names();
    writeln!(out, "lie_algebra {}", g.name()).unwrap();
    writeln!(out, "dim {}", g.dim()).unwrap();
    writeln!(out, "basis {}", names.join(" ")).unwrap();
    for (&(i, j), terms) in g.structure_constants() {
        let mut rhs = String::new();
        for (n, (&k, c)) in terms.iter().enumerate() {
            if n == 0 {
                write!(rhs, "{}*{}", render_rat(c), names[k]).unwrap();
            } else if c.is_negative() {
                write!(rhs, " - {}*{}", render_rat(&-c.clone()), names[k]).unwrap();
            } else {
                write!(rhs, " + {}*{}", render_rat(c), names[k]).unwrap();
            }
        }
        writeln!(out, "bracket [{},{}] = {}", names[i], names[j], rhs).unwrap();
    }
    if let Some(m) = metric {
        if m.is_identity() {
            writeln!(out, "metric identity").unwrap();
        } else {
            writeln!(out, "metric rows").unwrap();
            let q = m.matrix();
            write_rows(&mut out, (0..q.rows()).map(|r| q.row(r).iter().map(render_rat).collect()));
        }
    }
    writeln!(out, "end").unwrap();
    out
}

pub fn serialize_fmg(g: &FiniteMetricGroup) -> String {
    let mut out = String::new();
    writeln!(out, "metric_group {}", g.name).unwrap();
    writeln!(out, "order {}", g.order()).unwrap();
    // the identity is listed first
    let mut order: Vec<usize> = vec![g.identity];
    order.extend((0..g.order()).filter(|&x| x != g.identity));
    writeln!(out, "elements {}", order.iter().map(|&x| g.labels[x].as_str()).collect::<Vec<_>>().join(" ")).unwrap();
    writeln!(out, "table").unwrap();
    write_rows(
        &mut out,
        order.iter().map(|&a| order.iter().map(|&b| g.labels[g.mul(a, b)].clone()).collect()),
    );
    writeln!(out, "metric").unwrap();
    write_rows(&mut out, order.iter().map(|&a| order.iter().map(|&b| render_rat(&g.dist[a][b])).collect()));
    writeln!(out, "end").unwrap();
    out
}
