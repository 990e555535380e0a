//! The line-oriented `.trop` text format.
//!
//! ```text
//! # comment
//! diagram xabc a=1 b=1 c=4/3 s=4
//! curve rp2
//! vertex v (1,1)
//! end to_a v dir=(0,1) node=0
//! end to_b v dir=(1,0) node=1
//! end third v dir=(-1,-1) land=(2/3,2/3)
//! class (1,1,1)
//! ```

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use troplag::{
    BaseDiagram, CurveEnd, DiagramKind, EndSource, HomologyModel, IntVec, InternalEdge, Node,
    RatPoint, Rational, Terminal, TropicalCurve, TropicalVertex,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCurve {
    pub name: String,
    pub curve: TropicalCurve,
    /// Integral class assigned by hand, for diagrams without line sweeps.
    pub class: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub diagram: BaseDiagram,
    pub curves: Vec<NamedCurve>,
}

impl Document {
    pub fn new(diagram: BaseDiagram) -> Self {
        Document {
            diagram,
            curves: Vec::new(),
        }
    }

    pub fn with_curve(mut self, name: impl Into<String>, curve: TropicalCurve) -> Self {
        self.curves.push(NamedCurve {
            name: name.into(),
            curve,
            class: None,
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn err_at(&self, tok: &Token<'_>, message: impl Into<String>) -> ParseError {
        self.err(tok.column, message)
    }

    fn end_column(&self) -> usize {
        self.tokens
            .last()
            .map(|t| t.column + t.text.chars().count())
            .unwrap_or(1)
    }
}

/// Splits on whitespace, keeping parenthesised groups and `;` as single tokens.
fn tokenize(number: usize, raw: &str) -> Result<Line<'_>, ParseError> {
    let text = raw.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let column_of = |i: usize| text[..i].chars().count() + 1;
    let mut k = 0;
    while k < chars.len() {
        let (start, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        if ch == ';' {
            tokens.push(Token {
                text: &text[start..start + 1],
                column: column_of(start),
            });
            k += 1;
            continue;
        }
        let mut depth = 0usize;
        while k < chars.len() {
            let c = chars[k].1;
            if depth == 0 && (c.is_whitespace() || c == ';') {
                break;
            }
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    return Err(ParseError {
                        line: number,
                        column: column_of(chars[k].0),
                        message: "unbalanced ')'".into(),
                    })
                }
                ')' => depth -= 1,
                _ => {}
            }
            k += 1;
        }
        if depth != 0 {
            return Err(ParseError {
                line: number,
                column: column_of(start),
                message: "unclosed '('".into(),
            });
        }
        let stop = chars.get(k).map(|c| c.0).unwrap_or(text.len());
        tokens.push(Token {
            text: &text[start..stop],
            column: column_of(start),
        });
    }
    Ok(Line { number, tokens })
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    if s.contains('.') {
        return Err(format!(
            "decimal '{s}' is not allowed; write an exact fraction such as 1/2"
        ));
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !is_integer_literal(n) || d.is_empty() || !d.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("'{s}' is not a rational number"));
    }
    let n = BigInt::from_str(n).map_err(|e| e.to_string())?;
    let d = BigInt::from_str(d).map_err(|e| e.to_string())?;
    if d.is_zero() {
        return Err(format!("'{s}' has a zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn parse_int(s: &str) -> Result<i64, String> {
    if s.contains('.') || s.contains('/') {
        return Err(format!("'{s}' must be an integer"));
    }
    if !is_integer_literal(s) {
        return Err(format!("'{s}' is not an integer"));
    }
    s.parse()
        .map_err(|_| format!("'{s}' does not fit in 64 bits"))
}

fn tuple_items(s: &str) -> Result<Vec<&str>, String> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("expected a parenthesised tuple, got '{s}'"))?;
    Ok(inner.split(',').map(str::trim).collect())
}

pub fn parse_point(s: &str) -> Result<RatPoint, String> {
    match tuple_items(s)?.as_slice() {
        [x, y] => Ok(RatPoint::new(parse_rational(x)?, parse_rational(y)?)),
        _ => Err(format!("expected a point (x,y), got '{s}'")),
    }
}

fn parse_int_tuple(s: &str) -> Result<Vec<i64>, String> {
    tuple_items(s)?.into_iter().map(parse_int).collect()
}

pub fn parse_intvec(s: &str) -> Result<IntVec, String> {
    match parse_int_tuple(s)?.as_slice() {
        [x, y] => Ok(IntVec::new(*x, *y)),
        _ => Err(format!("expected an integer vector (x,y), got '{s}'")),
    }
}

fn parse_weight(s: &str) -> Result<u32, String> {
    let w = parse_int(s)?;
    u32::try_from(w).map_err(|_| format!("weight {w} is out of range"))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

/// `key=value` options after the positional tokens of a line.
struct Options<'a> {
    items: Vec<(&'a str, &'a str, Token<'a>)>,
}

impl<'a> Options<'a> {
    fn collect(
        line: &Line<'a>,
        tokens: &[Token<'a>],
        allowed: &[&str],
    ) -> Result<Self, ParseError> {
        let mut items: Vec<(&str, &str, Token<'a>)> = Vec::new();
        for tok in tokens {
            let Some((key, value)) = tok.text.split_once('=') else {
                return Err(line.err_at(tok, format!("expected key=value, got '{}'", tok.text)));
            };
            if !allowed.contains(&key) {
                return Err(line.err_at(tok, format!("unknown option '{key}'")));
            }
            if items.iter().any(|(k, _, _)| *k == key) {
                return Err(line.err_at(tok, format!("option '{key}' given twice")));
            }
            items.push((key, value, tok.clone()));
        }
        Ok(Options { items })
    }

    fn get(&self, key: &str) -> Option<(&'a str, &Token<'a>)> {
        self.items
            .iter()
            .find(|(k, _, _)| *k == key)
            .map(|(_, v, t)| (*v, t))
    }

    fn parsed<T>(
        &self,
        line: &Line<'_>,
        key: &str,
        f: impl Fn(&str) -> Result<T, String>,
    ) -> Result<Option<T>, ParseError> {
        match self.get(key) {
            None => Ok(None),
            Some((v, tok)) => f(v)
                .map(Some)
                .map_err(|m| line.err(tok.column + key.len() + 1, m)),
        }
    }

    fn required<T>(
        &self,
        line: &Line<'_>,
        key: &str,
        f: impl Fn(&str) -> Result<T, String>,
    ) -> Result<T, ParseError> {
        self.parsed(line, key, f)?
            .ok_or_else(|| line.err(line.end_column(), format!("missing {key}=")))
    }
}

fn value<T>(
    line: &Line<'_>,
    tok: &Token<'_>,
    f: impl Fn(&str) -> Result<T, String>,
) -> Result<T, ParseError> {
    f(tok.text).map_err(|m| line.err_at(tok, m))
}

fn parse_diagram(line: &Line<'_>) -> Result<BaseDiagram, ParseError> {
    let Some(kind) = line.tokens.get(1) else {
        return Err(line.err(line.end_column(), "expected rectangle, xabc or polygon"));
    };
    let build = |r: troplag::Result<BaseDiagram>| r.map_err(|e| line.err_at(kind, e.to_string()));
    match kind.text {
        "rectangle" => {
            let o = Options::collect(line, &line.tokens[2..], &["width", "height"])?;
            let w = o.required(line, "width", parse_rational)?;
            let h = o.required(line, "height", parse_rational)?;
            build(BaseDiagram::rectangle(w, h))
        }
        "xabc" => {
            let o = Options::collect(line, &line.tokens[2..], &["a", "b", "c", "s", "ya", "xb"])?;
            let a = o.required(line, "a", parse_rational)?;
            let b = o.required(line, "b", parse_rational)?;
            let c = o.required(line, "c", parse_rational)?;
            let s = o.required(line, "s", parse_rational)?;
            let ya = o.parsed(line, "ya", parse_rational)?;
            let xb = o.parsed(line, "xb", parse_rational)?;
            if ya.is_none() && xb.is_none() {
                build(BaseDiagram::x_abc(a, b, c, s))
            } else {
                let ya = ya.unwrap_or_else(|| &s - &a * Rational::from_integer(2.into()));
                let xb = xb.unwrap_or_else(|| &s - &b * Rational::from_integer(2.into()));
                build(BaseDiagram::x_abc_with_nodes(a, b, c, s, ya, xb))
            }
        }
        "polygon" => parse_polygon(line, kind),
        other => Err(line.err_at(kind, format!("unknown diagram kind '{other}'"))),
    }
}

type SweepClasses = (Option<Vec<i64>>, Option<Vec<i64>>);

fn parse_polygon(line: &Line<'_>, kind: &Token<'_>) -> Result<BaseDiagram, ParseError> {
    let mut clauses: Vec<&[Token<'_>]> = line.tokens[2..].split(|t| t.text == ";").collect();
    let corners = clauses.remove(0);
    let mut vertices = Vec::new();
    for tok in corners {
        vertices.push(value(line, tok, parse_point)?);
    }
    let mut nodes = Vec::new();
    let mut labels: Option<Vec<String>> = None;
    let mut form: Option<(Vec<i64>, &Token<'_>)> = None;
    let mut sweeps: Option<SweepClasses> = None;
    for clause in clauses {
        let Some(head) = clause.first() else {
            return Err(line.err(line.end_column(), "empty clause"));
        };
        let rest = &clause[1..];
        match head.text {
            "node" => {
                let Some(pos) = rest.first() else {
                    return Err(line.err_at(head, "node needs a position"));
                };
                let position = value(line, pos, parse_point)?;
                let o = Options::collect(line, &rest[1..], &["cut"])?;
                let cut_direction = o.required(line, "cut", parse_intvec)?;
                nodes.push(Node {
                    position,
                    cut_direction,
                });
            }
            "basis" => {
                for tok in rest {
                    if !is_identifier(tok.text) {
                        return Err(
                            line.err_at(tok, format!("'{}' is not a basis label", tok.text))
                        );
                    }
                }
                labels = Some(rest.iter().map(|t| t.text.to_string()).collect());
            }
            "form" => {
                let mut entries = Vec::new();
                for tok in rest {
                    entries.push(value(line, tok, parse_int)?);
                }
                form = Some((entries, head));
            }
            "sweepclasses" => {
                let o = Options::collect(line, rest, &["h", "v"])?;
                sweeps = Some((
                    o.parsed(line, "h", parse_int_tuple)?,
                    o.parsed(line, "v", parse_int_tuple)?,
                ));
            }
            other => return Err(line.err_at(head, format!("unknown polygon clause '{other}'"))),
        }
    }
    let labels =
        labels.ok_or_else(|| line.err(line.end_column(), "polygon needs a basis clause"))?;
    let (entries, form_tok) =
        form.ok_or_else(|| line.err(line.end_column(), "polygon needs a form clause"))?;
    let n = labels.len();
    if entries.len() != n * n {
        return Err(line.err_at(
            form_tok,
            format!("form needs {} entries for {n} basis labels", n * n),
        ));
    }
    let rows = entries.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
    let (h, v) = sweeps.unwrap_or((None, None));
    let homology =
        HomologyModel::new(labels, rows, h, v).map_err(|e| line.err_at(kind, e.to_string()))?;
    BaseDiagram::new("polygon", DiagramKind::Polygon, vertices, nodes, homology)
        .map_err(|e| line.err_at(kind, e.to_string()))
}

struct CurveBuilder {
    named: NamedCurve,
    ids: HashSet<String>,
}

impl CurveBuilder {
    fn claim(&mut self, line: &Line<'_>, tok: &Token<'_>) -> Result<String, ParseError> {
        if !is_identifier(tok.text) {
            return Err(line.err_at(tok, format!("'{}' is not a valid id", tok.text)));
        }
        if !self.ids.insert(tok.text.to_string()) {
            return Err(line.err_at(tok, format!("duplicate id '{}'", tok.text)));
        }
        Ok(tok.text.to_string())
    }
}

fn positional<'t, 'a>(
    line: &'t Line<'a>,
    count: usize,
    what: &str,
) -> Result<&'t [Token<'a>], ParseError> {
    if line.tokens.len() < count + 1 {
        return Err(line.err(line.end_column(), what.to_string()));
    }
    Ok(&line.tokens[1..=count])
}

fn parse_curve_line(line: &Line<'_>, b: &mut CurveBuilder) -> Result<(), ParseError> {
    let head = &line.tokens[0];
    match head.text {
        "vertex" => {
            let t = positional(line, 2, "usage: vertex <id> (<x>,<y>)")?;
            let id = b.claim(line, &t[0])?;
            let position = value(line, &t[1], parse_point)?;
            if let Some(extra) = line.tokens.get(3) {
                return Err(line.err_at(extra, "unexpected token"));
            }
            b.named.curve.vertices.push(TropicalVertex { id, position });
        }
        "edge" => {
            let t = positional(line, 3, "usage: edge <id> <from> <to> [weight=<int>]")?;
            let id = b.claim(line, &t[0])?;
            let o = Options::collect(line, &line.tokens[4..], &["weight"])?;
            let weight = o.parsed(line, "weight", parse_weight)?.unwrap_or(1);
            let curve = &mut b.named.curve;
            let position = |tok: &Token<'_>| {
                curve
                    .vertex(tok.text)
                    .map(|v| v.position.clone())
                    .ok_or_else(|| {
                        line.err_at(
                            tok,
                            format!("unknown vertex '{}' (declare vertices first)", tok.text),
                        )
                    })
            };
            let (p, q) = (position(&t[1])?, position(&t[2])?);
            let (direction, _) = troplag::lattice::direction_between(&p, &q)
                .map_err(|_| line.err_at(&t[0], format!("edge {id} joins coincident vertices")))?;
            curve.edges.push(InternalEdge {
                id,
                from: t[1].text.to_string(),
                to: t[2].text.to_string(),
                direction,
                weight,
            });
        }
        "end" => {
            let t = positional(
                line,
                2,
                "usage: end <id> <vertex|(x,y)> dir=(<int>,<int>) [land=(x,y)] [node=<index>]",
            )?;
            let id = b.claim(line, &t[0])?;
            let source = if t[1].text.starts_with('(') {
                EndSource::Point(value(line, &t[1], parse_point)?)
            } else if is_identifier(t[1].text) {
                EndSource::Vertex(t[1].text.to_string())
            } else {
                return Err(line.err_at(
                    &t[1],
                    format!("'{}' is neither a vertex id nor a point", t[1].text),
                ));
            };
            let o = Options::collect(line, &line.tokens[3..], &["dir", "land", "node", "weight"])?;
            let direction = o.required(line, "dir", parse_intvec)?;
            let weight = o.parsed(line, "weight", parse_weight)?.unwrap_or(1);
            let land = o.parsed(line, "land", parse_point)?;
            let node = o.parsed(line, "node", |s| {
                s.parse::<usize>()
                    .map_err(|_| format!("'{s}' is not a node index"))
            })?;
            let terminal = match (land, node) {
                (Some(landing), None) => Terminal::Boundary { landing },
                (None, Some(i)) => Terminal::Node(i),
                (Some(_), Some(_)) => {
                    return Err(line.err_at(&t[0], "an end takes land= or node=, not both"))
                }
                (None, None) => {
                    return Err(line.err(line.end_column(), "an end needs land= or node="))
                }
            };
            b.named.curve.ends.push(CurveEnd {
                id,
                source,
                direction,
                weight,
                terminal,
            });
        }
        "class" => {
            let t = positional(line, 1, "usage: class (<int>,...)")?;
            if b.named.class.is_some() {
                return Err(line.err_at(head, "class given twice"));
            }
            b.named.class = Some(value(line, &t[0], parse_int_tuple)?);
        }
        other => return Err(line.err_at(head, format!("unknown directive '{other}'"))),
    }
    Ok(())
}

/// Parses a document. Geometric problems with curves are left to validation.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let mut diagram: Option<BaseDiagram> = None;
    let mut curves: Vec<NamedCurve> = Vec::new();
    let mut current: Option<CurveBuilder> = None;
    let mut names: HashSet<String> = HashSet::new();

    let finish = |b: Option<CurveBuilder>, curves: &mut Vec<NamedCurve>| {
        if let Some(b) = b {
            if !b.named.curve.is_empty() || b.named.class.is_some() {
                curves.push(b.named);
            }
        }
    };

    for (i, raw) in text.lines().enumerate() {
        let line = tokenize(i + 1, raw)?;
        let Some(head) = line.tokens.first() else {
            continue;
        };
        match head.text {
            "diagram" => {
                if diagram.is_some() {
                    return Err(line.err_at(head, "a document has exactly one diagram"));
                }
                diagram = Some(parse_diagram(&line)?);
            }
            "curve" => {
                if diagram.is_none() {
                    return Err(line.err_at(head, "the diagram line must come first"));
                }
                let t = positional(&line, 1, "usage: curve <name>")?;
                if !is_identifier(t[0].text) {
                    return Err(
                        line.err_at(&t[0], format!("'{}' is not a valid curve name", t[0].text))
                    );
                }
                if !names.insert(t[0].text.to_string()) {
                    return Err(line.err_at(&t[0], format!("duplicate curve name '{}'", t[0].text)));
                }
                if let Some(extra) = line.tokens.get(2) {
                    return Err(line.err_at(extra, "unexpected token"));
                }
                finish(current.take(), &mut curves);
                current = Some(CurveBuilder {
                    named: NamedCurve {
                        name: t[0].text.to_string(),
                        curve: TropicalCurve::new(),
                        class: None,
                    },
                    ids: HashSet::new(),
                });
            }
            _ => match current.as_mut() {
                Some(b) => parse_curve_line(&line, b)?,
                None if diagram.is_none() => {
                    return Err(line.err_at(head, "the diagram line must come first"))
                }
                None => {
                    return Err(line.err_at(head, format!("'{}' outside a curve block", head.text)))
                }
            },
        }
    }
    finish(current, &mut curves);
    let diagram = diagram.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "no diagram line".into(),
    })?;
    Ok(Document { diagram, curves })
}

fn write_point(out: &mut String, p: &RatPoint) {
    let _ = write!(out, "({},{})", p.x, p.y);
}

fn write_diagram(out: &mut String, d: &BaseDiagram) {
    match d.kind() {
        DiagramKind::Rectangle { width, height } => {
            let _ = writeln!(out, "diagram rectangle width={width} height={height}");
        }
        DiagramKind::Xabc {
            a,
            b,
            c,
            s,
            node_a_height,
            node_b_offset,
        } => {
            let _ = write!(out, "diagram xabc a={a} b={b} c={c} s={s}");
            let two = Rational::from_integer(2.into());
            if *node_a_height != s - a * &two || *node_b_offset != s - b * &two {
                let _ = write!(out, " ya={node_a_height} xb={node_b_offset}");
            }
            out.push('\n');
        }
        DiagramKind::Polygon => {
            out.push_str("diagram polygon");
            for v in d.polygon_vertices() {
                out.push(' ');
                write_point(out, v);
            }
            for n in d.nodes() {
                out.push_str(" ; node ");
                write_point(out, &n.position);
                let _ = write!(out, " cut={}", n.cut_direction);
            }
            let h = d.homology();
            out.push_str(" ; basis");
            for l in h.basis_labels() {
                let _ = write!(out, " {l}");
            }
            out.push_str(" ; form");
            for row in h.intersection_form() {
                for e in row {
                    let _ = write!(out, " {e}");
                }
            }
            if h.horizontal_sweep_class().is_some() || h.vertical_sweep_class().is_some() {
                out.push_str(" ; sweepclasses");
                if let Some(c) = h.horizontal_sweep_class() {
                    let _ = write!(out, " h={}", int_tuple(c));
                }
                if let Some(c) = h.vertical_sweep_class() {
                    let _ = write!(out, " v={}", int_tuple(c));
                }
            }
            out.push('\n');
        }
    }
}

pub(crate) fn int_tuple(c: &[i64]) -> String {
    let items: Vec<String> = c.iter().map(i64::to_string).collect();
    format!("({})", items.join(","))
}

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    write_diagram(&mut out, &doc.diagram);
    for nc in &doc.curves {
        let _ = writeln!(out, "\ncurve {}", nc.name);
        let c = &nc.curve;
        for v in &c.vertices {
            let _ = write!(out, "vertex {} ", v.id);
            write_point(&mut out, &v.position);
            out.push('\n');
        }
        for e in &c.edges {
            let _ = write!(out, "edge {} {} {}", e.id, e.from, e.to);
            if e.weight != 1 {
                let _ = write!(out, " weight={}", e.weight);
            }
            out.push('\n');
        }
        for e in &c.ends {
            let _ = write!(out, "end {} ", e.id);
            match &e.source {
                EndSource::Vertex(v) => out.push_str(v),
                EndSource::Point(p) => write_point(&mut out, p),
            }
            let _ = write!(out, " dir={}", e.direction);
            match &e.terminal {
                Terminal::Boundary { landing } => {
                    out.push_str(" land=");
                    write_point(&mut out, landing);
                }
                Terminal::Node(i) => {
                    let _ = write!(out, " node={i}");
                }
            }
            if e.weight != 1 {
                let _ = write!(out, " weight={}", e.weight);
            }
            out.push('\n');
        }
        if let Some(class) = &nc.class {
            let _ = writeln!(out, "class {}", int_tuple(class));
        }
    }
    out
}
