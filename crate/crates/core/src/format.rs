//! The line-oriented structure format.
//!
//! ```text
//! [ring]
//! m = 2
//! n = 2
//! elements = 0 1
//! zero = 0
//! one = 1
//! h 0 0 = { 0 }
//! h 0 1 = { 1 }
//! h 1 0 = { 1 }
//! h 1 1 = { 0 1 }
//! k 0 0 = 0
//! k 0 1 = 0
//! k 1 0 = 0
//! k 1 1 = 1
//!
//! [module]
//! elements = 0 1
//! zero = 0
//! f 0 0 = { 0 }
//! ...
//! g 1 1 = { 1 }
//! ```
//!
//! `h` and `f` lines carry `m` names, `k` lines `n`, `g` lines `n-1` ring
//! names followed by one module name. Tables must be total. `#` starts a
//! comment. Names are any run of characters other than whitespace and
//! `{ } = # [ ]`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;

use crate::carrier::{checked_pow, next_tuple, Carrier};
use crate::module::{Hypermodule, ScalarAction};
use crate::ops::{HyperOperation, Operation};
use crate::ring::KrasnerHyperring;
use crate::set::{ElementSet, MAX_CARRIER};

/// Largest table (entries) the parser accepts.
pub const MAX_TABLE_ENTRIES: u128 = 1 << 22;
const MAX_LISTED_MISSING: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Syntax,
    Totality,
    UndefinedName,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Syntax => "syntax",
            Category::Totality => "totality",
            Category::UndefinedName => "undefined-name",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub category: Category,
    pub message: String,
    /// Missing tuples for totality errors, at most 50.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<Vec<String>>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.category, self.message)?;
        for t in &self.missing {
            write!(f, "\n  missing ({})", t.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
pub struct ParseFailure {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl ParseFailure {
    fn one(line: usize, column: usize, category: Category, message: impl Into<String>) -> Self {
        ParseFailure {
            diagnostics: vec![Diagnostic {
                line,
                column,
                category,
                message: message.into(),
                missing: Vec::new(),
            }],
        }
    }

    pub fn category(&self) -> Category {
        self.diagnostics[0].category
    }
}

/// A parsed file: a ring and, optionally, a module over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub ring: Arc<KrasnerHyperring>,
    pub module: Option<Hypermodule>,
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    column: usize,
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token>, ParseFailure> {
    let mut tokens = Vec::new();
    let mut chars = line.char_indices().peekable();
    let column_of = |byte: usize| line[..byte].chars().count() + 1;
    while let Some(&(i, c)) = chars.peek() {
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' | '}' | '=' => {
                tokens.push(Token {
                    text: c.to_string(),
                    column: column_of(i),
                });
                chars.next();
            }
            '[' | ']' => {
                return Err(ParseFailure::one(line_no, column_of(i), Category::Syntax, format!("unexpected `{c}`")));
            }
            _ => {
                let start = i;
                let mut end = line.len();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_whitespace() || "{}=#[]".contains(d) {
                        end = j;
                        break;
                    }
                    chars.next();
                }
                tokens.push(Token {
                    text: line[start..end].to_string(),
                    column: column_of(start),
                });
            }
        }
    }
    Ok(tokens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Ring,
    Module,
}

#[derive(Clone, Debug)]
enum Rhs {
    Name(Token),
    Set(Vec<Token>),
}

#[derive(Clone, Debug)]
struct TableLine {
    line: usize,
    args: Vec<Token>,
    rhs: Rhs,
}

#[derive(Default)]
struct RawSection {
    header_line: usize,
    scalars: HashMap<&'static str, (usize, Vec<Token>)>,
    tables: HashMap<char, Vec<TableLine>>,
}

const KEYS: [&str; 5] = ["m", "n", "elements", "zero", "one"];

fn parse_line(tokens: Vec<Token>, line: usize, section: &mut RawSection, which: Section) -> Result<(), ParseFailure> {
    let syntax = |col: usize, msg: String| ParseFailure::one(line, col, Category::Syntax, msg);
    let head = &tokens[0];
    if head.text == "=" || head.text == "{" || head.text == "}" {
        return Err(syntax(head.column, format!("unexpected `{}`", head.text)));
    }
    let eq = tokens
        .iter()
        .position(|t| t.text == "=")
        .ok_or_else(|| syntax(head.column, "expected `=`".into()))?;
    if let Some(&key) = KEYS.iter().find(|&&k| k == head.text) {
        if eq == 1 {
            let allowed: &[&str] = match which {
                Section::Ring => &KEYS,
                Section::Module => &["elements", "zero"],
            };
            if !allowed.contains(&key) {
                return Err(syntax(head.column, format!("key `{key}` is not allowed in this section")));
            }
            let values = tokens[2..].to_vec();
            if let Some(t) = values.iter().find(|t| matches!(t.text.as_str(), "=" | "{" | "}")) {
                return Err(syntax(t.column, format!("unexpected `{}`", t.text)));
            }
            if values.is_empty() {
                return Err(syntax(tokens[1].column, format!("`{key}` needs a value")));
            }
            if key != "elements" && values.len() != 1 {
                return Err(syntax(values[1].column, format!("`{key}` takes a single value")));
            }
            if section.scalars.insert(key, (line, values)).is_some() {
                return Err(syntax(head.column, format!("duplicate `{key}`")));
            }
            return Ok(());
        }
    }
    let table = match (which, head.text.as_str()) {
        (Section::Ring, "h") => 'h',
        (Section::Ring, "k") => 'k',
        (Section::Module, "f") => 'f',
        (Section::Module, "g") => 'g',
        _ => return Err(syntax(head.column, format!("unknown entry `{}` in this section", head.text))),
    };
    let args = tokens[1..eq].to_vec();
    if let Some(t) = args.iter().find(|t| t.text == "{" || t.text == "}") {
        return Err(syntax(t.column, format!("unexpected `{}`", t.text)));
    }
    if args.is_empty() {
        return Err(syntax(tokens[eq].column, "table entry without arguments".into()));
    }
    let rest = &tokens[eq + 1..];
    let after = tokens[eq].column + 1;
    let rhs = if table == 'k' {
        match rest {
            [t] if !matches!(t.text.as_str(), "{" | "}" | "=") => Rhs::Name(t.clone()),
            [] => return Err(syntax(after, "expected an element name".into())),
            [t, ..] => return Err(syntax(t.column, "expected a single element name".into())),
        }
    } else {
        let Some(open) = rest.first() else {
            return Err(syntax(after, "expected `{`".into()));
        };
        if open.text != "{" {
            return Err(syntax(open.column, "expected `{`".into()));
        }
        let Some(close) = rest.iter().position(|t| t.text == "}") else {
            return Err(syntax(open.column, "unclosed `{`".into()));
        };
        if close + 1 != rest.len() {
            return Err(syntax(rest[close + 1].column, "trailing tokens after `}`".into()));
        }
        let names = rest[1..close].to_vec();
        if let Some(t) = names.iter().find(|t| t.text == "{" || t.text == "=") {
            return Err(syntax(t.column, format!("unexpected `{}`", t.text)));
        }
        if names.is_empty() {
            return Err(syntax(open.column, "empty set: table values must be nonempty".into()));
        }
        Rhs::Set(names)
    };
    section.tables.entry(table).or_default().push(TableLine { line, args, rhs });
    Ok(())
}

fn scalar_int(section: &RawSection, key: &'static str) -> Result<usize, ParseFailure> {
    let (line, values) = section.scalars.get(key).ok_or_else(|| {
        ParseFailure::one(section.header_line, 1, Category::Syntax, format!("missing `{key}`"))
    })?;
    let t = &values[0];
    let v: usize = t
        .text
        .parse()
        .map_err(|_| ParseFailure::one(*line, t.column, Category::Syntax, format!("`{key}` must be an integer")))?;
    if !(2..=64).contains(&v) {
        return Err(ParseFailure::one(*line, t.column, Category::Syntax, format!("`{key}` must be between 2 and 64")));
    }
    Ok(v)
}

fn carrier_of(section: &RawSection) -> Result<Carrier, ParseFailure> {
    let (line, values) = section.scalars.get("elements").ok_or_else(|| {
        ParseFailure::one(section.header_line, 1, Category::Syntax, "missing `elements`")
    })?;
    if values.len() > MAX_CARRIER {
        return Err(ParseFailure::one(
            *line,
            values[MAX_CARRIER].column,
            Category::Syntax,
            format!("at most {MAX_CARRIER} elements are supported"),
        ));
    }
    let mut seen = HashMap::new();
    for t in values {
        if seen.insert(t.text.as_str(), ()).is_some() {
            return Err(ParseFailure::one(*line, t.column, Category::Syntax, format!("duplicate element `{}`", t.text)));
        }
    }
    Ok(Carrier::new(values.iter().map(|t| t.text.clone()).collect()).expect("checked labels"))
}

fn resolve(carrier: &Carrier, line: usize, t: &Token) -> Result<usize, ParseFailure> {
    carrier
        .index_of(&t.text)
        .ok_or_else(|| ParseFailure::one(line, t.column, Category::UndefinedName, format!("unknown element `{}`", t.text)))
}

fn named(section: &RawSection, carrier: &Carrier, key: &'static str) -> Result<usize, ParseFailure> {
    let (line, values) = section.scalars.get(key).ok_or_else(|| {
        ParseFailure::one(section.header_line, 1, Category::Syntax, format!("missing `{key}`"))
    })?;
    resolve(carrier, *line, &values[0])
}

/// Fill a table from its lines; `carriers[j]` resolves argument `j`.
fn fill_table<V: Clone>(
    section: &RawSection,
    name: char,
    carriers: &[&Carrier],
    mut value: impl FnMut(&Rhs, usize) -> Result<V, ParseFailure>,
) -> Result<Vec<V>, ParseFailure> {
    let arity = carriers.len();
    let mut entries: u128 = 1;
    for c in carriers {
        entries = entries.saturating_mul(c.size() as u128);
    }
    if entries > MAX_TABLE_ENTRIES {
        return Err(ParseFailure::one(
            section.header_line,
            1,
            Category::Syntax,
            format!("table `{name}` would have {entries} entries, limit is {MAX_TABLE_ENTRIES}"),
        ));
    }
    let entries = entries as usize;
    let mut table: Vec<Option<V>> = vec![None; entries];
    let lines = section.tables.get(&name).map(Vec::as_slice).unwrap_or(&[]);
    for tl in lines {
        if tl.args.len() != arity {
            return Err(ParseFailure::one(
                tl.line,
                tl.args[0].column,
                Category::Syntax,
                format!("`{name}` takes {arity} arguments, found {}", tl.args.len()),
            ));
        }
        let mut idx = 0usize;
        for (t, c) in tl.args.iter().zip(carriers) {
            idx = idx * c.size() + resolve(c, tl.line, t)?;
        }
        let v = value(&tl.rhs, tl.line)?;
        if table[idx].replace(v).is_some() {
            return Err(ParseFailure::one(
                tl.line,
                tl.args[0].column,
                Category::Syntax,
                format!("duplicate `{name}` entry"),
            ));
        }
    }
    let missing_count = table.iter().filter(|v| v.is_none()).count();
    if missing_count > 0 {
        let sizes: Vec<usize> = carriers.iter().map(|c| c.size()).collect();
        let missing = table
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .take(MAX_LISTED_MISSING)
            .map(|(mut i, _)| {
                let mut names = vec![String::new(); arity];
                for j in (0..arity).rev() {
                    names[j] = carriers[j].label(i % sizes[j]).to_string();
                    i /= sizes[j];
                }
                names
            })
            .collect();
        return Err(ParseFailure {
            diagnostics: vec![Diagnostic {
                line: section.header_line,
                column: 1,
                category: Category::Totality,
                message: format!("table `{name}` is missing {missing_count} entries"),
                missing,
            }],
        });
    }
    Ok(table.into_iter().map(|v| v.expect("total")).collect())
}

fn set_value(carrier: &Carrier, rhs: &Rhs, line: usize) -> Result<ElementSet, ParseFailure> {
    match rhs {
        Rhs::Set(names) => names.iter().map(|t| resolve(carrier, line, t)).collect(),
        Rhs::Name(t) => Err(ParseFailure::one(line, t.column, Category::Syntax, "expected a set `{ ... }`")),
    }
}

pub fn parse(text: &str) -> Result<Structure, ParseFailure> {
    let mut ring_raw: Option<RawSection> = None;
    let mut module_raw: Option<RawSection> = None;
    let mut current: Option<Section> = None;
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('[') {
            let col = content.find('[').map(|b| content[..b].chars().count() + 1).unwrap_or(1);
            let which = match trimmed {
                "[ring]" => Section::Ring,
                "[module]" => Section::Module,
                _ => {
                    return Err(ParseFailure::one(line, col, Category::Syntax, format!("unknown section `{trimmed}`")));
                }
            };
            let slot = match which {
                Section::Ring if module_raw.is_some() => {
                    return Err(ParseFailure::one(line, col, Category::Syntax, "`[ring]` must come before `[module]`"));
                }
                Section::Ring => &mut ring_raw,
                Section::Module if ring_raw.is_none() => {
                    return Err(ParseFailure::one(line, col, Category::Syntax, "`[module]` needs a preceding `[ring]`"));
                }
                Section::Module => &mut module_raw,
            };
            if slot.is_some() {
                return Err(ParseFailure::one(line, col, Category::Syntax, format!("duplicate section `{trimmed}`")));
            }
            *slot = Some(RawSection {
                header_line: line,
                ..RawSection::default()
            });
            current = Some(which);
            continue;
        }
        let tokens = tokenize(raw_line, line)?;
        let Some(which) = current else {
            return Err(ParseFailure::one(line, tokens[0].column, Category::Syntax, "expected `[ring]` before any entry"));
        };
        let section = match which {
            Section::Ring => ring_raw.as_mut(),
            Section::Module => module_raw.as_mut(),
        }
        .expect("section opened");
        parse_line(tokens, line, section, which)?;
    }
    let ring_raw = ring_raw.ok_or_else(|| ParseFailure::one(1, 1, Category::Syntax, "missing `[ring]` section"))?;
    let ring = Arc::new(build_ring(&ring_raw)?);
    let module = match module_raw {
        Some(raw) => Some(build_module(&raw, ring.clone())?),
        None => None,
    };
    Ok(Structure { ring, module })
}

fn build_ring(raw: &RawSection) -> Result<KrasnerHyperring, ParseFailure> {
    let m = scalar_int(raw, "m")?;
    let n = scalar_int(raw, "n")?;
    let carrier = carrier_of(raw)?;
    let zero = named(raw, &carrier, "zero")?;
    let one = named(raw, &carrier, "one")?;
    let h_args = vec![&carrier; m];
    let h = fill_table(raw, 'h', &h_args, |rhs, line| set_value(&carrier, rhs, line))?;
    let k_args = vec![&carrier; n];
    let k = fill_table(raw, 'k', &k_args, |rhs, line| match rhs {
        Rhs::Name(t) => resolve(&carrier, line, t),
        Rhs::Set(ts) => Err(ParseFailure::one(line, ts[0].column, Category::Syntax, "`k` values are single elements")),
    })?;
    let size = carrier.size();
    let h = HyperOperation::from_table(size, m, h).expect("parsed table shape");
    let k = Operation::from_table(size, n, k).expect("parsed table shape");
    Ok(KrasnerHyperring::new(carrier, h, k, zero, one).expect("parsed ring shape"))
}

fn build_module(raw: &RawSection, ring: Arc<KrasnerHyperring>) -> Result<Hypermodule, ParseFailure> {
    let carrier = carrier_of(raw)?;
    let zero = named(raw, &carrier, "zero")?;
    let f_args = vec![&carrier; ring.m()];
    let f = fill_table(raw, 'f', &f_args, |rhs, line| set_value(&carrier, rhs, line))?;
    let mut g_args = vec![ring.carrier(); ring.n() - 1];
    g_args.push(&carrier);
    let g = fill_table(raw, 'g', &g_args, |rhs, line| set_value(&carrier, rhs, line))?;
    let size = carrier.size();
    let f = HyperOperation::from_table(size, ring.m(), f).expect("parsed table shape");
    let g = ScalarAction::from_table(ring.size(), size, ring.n() - 1, g).expect("parsed table shape");
    Ok(Hypermodule::new(ring, carrier, f, g, zero).expect("parsed module shape"))
}

fn write_set(out: &mut String, carrier: &Carrier, set: ElementSet) {
    out.push('{');
    for x in set {
        out.push(' ');
        out.push_str(carrier.label(x));
    }
    out.push_str(" }");
}

fn write_tuple(out: &mut String, name: char, carriers: &[&Carrier], tuple: &[usize]) {
    out.push(name);
    for (c, &x) in carriers.iter().zip(tuple) {
        out.push(' ');
        out.push_str(c.label(x));
    }
    out.push_str(" = ");
}

fn write_ring(out: &mut String, ring: &KrasnerHyperring) {
    let c = ring.carrier();
    let _ = writeln!(out, "[ring]\nm = {}\nn = {}", ring.m(), ring.n());
    let _ = writeln!(out, "elements = {}", c.labels().join(" "));
    let _ = writeln!(out, "zero = {}\none = {}\n", c.label(ring.zero()), c.label(ring.one()));
    let s = c.size();
    let mut t = vec![0; ring.m()];
    let h_args = vec![c; ring.m()];
    loop {
        write_tuple(out, 'h', &h_args, &t);
        write_set(out, c, ring.h().get(&t));
        out.push('\n');
        if !next_tuple(&mut t, s) {
            break;
        }
    }
    out.push('\n');
    let mut t = vec![0; ring.n()];
    let k_args = vec![c; ring.n()];
    loop {
        write_tuple(out, 'k', &k_args, &t);
        out.push_str(c.label(ring.k().get(&t)));
        out.push('\n');
        if !next_tuple(&mut t, s) {
            break;
        }
    }
}

fn write_module(out: &mut String, module: &Hypermodule) {
    let c = module.carrier();
    let rc = module.ring().carrier();
    let _ = writeln!(out, "\n[module]\nelements = {}", c.labels().join(" "));
    let _ = writeln!(out, "zero = {}\n", c.label(module.zero()));
    let m = module.f().arity();
    let f_args = vec![c; m];
    let mut t = vec![0; m];
    loop {
        write_tuple(out, 'f', &f_args, &t);
        write_set(out, c, module.f().get(&t));
        out.push('\n');
        if !next_tuple(&mut t, c.size()) {
            break;
        }
    }
    out.push('\n');
    let scalars = module.g().scalars();
    let mut g_args = vec![rc; scalars];
    g_args.push(c);
    let mut rs = vec![0; scalars];
    loop {
        for x in 0..c.size() {
            let mut tuple = rs.clone();
            tuple.push(x);
            write_tuple(out, 'g', &g_args, &tuple);
            write_set(out, c, module.g().get(&rs, x));
            out.push('\n');
        }
        if !next_tuple(&mut rs, rc.size()) {
            break;
        }
    }
}

/// Canonical text of a ring: tuples in lexicographic order, sets ascending.
pub fn emit_ring(ring: &KrasnerHyperring) -> String {
    let mut out = String::new();
    write_ring(&mut out, ring);
    out
}

/// Canonical text of a module together with its ring.
pub fn emit_module(module: &Hypermodule) -> String {
    let mut out = emit_ring(module.ring());
    write_module(&mut out, module);
    out
}

pub fn emit(structure: &Structure) -> String {
    match &structure.module {
        Some(m) => emit_module(m),
        None => emit_ring(&structure.ring),
    }
}

/// Number of table lines a canonical file for these shapes contains, or
/// `None` when it overflows.
pub fn table_lines(ring_size: usize, module_size: usize, m: usize, n: usize) -> Option<u128> {
    let h = checked_pow(ring_size, m)?;
    let k = checked_pow(ring_size, n)?;
    let f = checked_pow(module_size, m)?;
    let g = checked_pow(ring_size, n - 1)?.checked_mul(module_size as u128)?;
    h.checked_add(k)?.checked_add(f)?.checked_add(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_files_parse_to_fixtures() {
        let k2 = parse(fixtures::files::K2).unwrap();
        assert_eq!(*k2.ring, fixtures::k2());
        assert_eq!(k2.module.unwrap(), fixtures::k2_over_k2());
        let z4 = parse(fixtures::files::Z4).unwrap();
        assert_eq!(z4.module.unwrap(), fixtures::zn_over_self(4));
        let z6 = parse(fixtures::files::Z6).unwrap();
        assert_eq!(z6.module.unwrap(), fixtures::zn_over_self(6));
        let v4 = parse(fixtures::files::V4).unwrap();
        assert_eq!(v4.module.unwrap(), fixtures::v4_over_z2());
    }

    #[test]
    fn emit_is_canonical_and_round_trips() {
        for text in [fixtures::files::K2, fixtures::files::Z4, fixtures::files::Z6, fixtures::files::V4] {
            let s = parse(text).unwrap();
            let out = emit(&s);
            let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
            assert_eq!(out, body);
            assert_eq!(parse(&out).unwrap(), s);
        }
        let ternary = fixtures::zn_mn(3, 3, 3);
        assert_eq!(*parse(&emit_ring(&ternary)).unwrap().ring, ternary);
    }

    #[test]
    fn missing_line_is_a_totality_error() {
        let text = fixtures::files::Z4.replace("h 2 3 = { 1 }\n", "");
        let err = parse(&text).unwrap_err();
        assert_eq!(err.category(), Category::Totality);
        assert_eq!(err.diagnostics[0].missing, vec![vec!["2".to_string(), "3".to_string()]]);
    }

    #[test]
    fn empty_set_is_rejected() {
        let text = fixtures::files::K2.replace("h 1 1 = { 0 1 }", "h 1 1 = {}");
        let err = parse(&text).unwrap_err();
        assert_eq!(err.category(), Category::Syntax);
        assert!(err.to_string().contains("empty set"), "{err}");
    }

    #[test]
    fn undefined_names_report_position() {
        let text = fixtures::files::K2.replace("k 1 1 = 1", "k 1 1 = 7");
        let err = parse(&text).unwrap_err();
        let d = &err.diagnostics[0];
        assert_eq!(d.category, Category::UndefinedName);
        assert_eq!(d.column, 9);
        assert!(text.lines().nth(d.line - 1).unwrap().starts_with("k 1 1"));
    }

    #[test]
    fn ring_only_files() {
        let text = emit_ring(&fixtures::zn(3));
        let s = parse(&text).unwrap();
        assert!(s.module.is_none());
        assert_eq!(emit(&s), text);
    }
}
