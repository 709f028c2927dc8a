use std::collections::HashMap;
use std::sync::Arc;

use super::{IoError, Library, NamedMap, NamedSemilinear, Value};
use crate::category::{Additive, Arrow, FactorizationCategory, FiniteCategory, NONE};
use crate::group::FiniteGroup;
use crate::morphism::{Morphism, Variance};
use crate::ring::FiniteRing;
use crate::semilinear::{FieldFq2, Matrix, SemilinearMap};

/// Non-blank, non-comment lines with their 1-based numbers.
struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    end: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Self { lines, pos: 0, end: text.lines().count() + 1 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied();
        self.pos += 1;
        l
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    /// The next line, or an error at the line after the last one.
    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), IoError> {
        self.next().ok_or_else(|| parse_error(self.end, format!("expected {what}, found end of file")))
    }

    fn finish(&mut self) -> Result<(), IoError> {
        match self.next() {
            None => Ok(()),
            Some((line, text)) => Err(parse_error(line, format!("unexpected `{text}`"))),
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, message: message.into() }
}

fn number(line: usize, token: &str) -> Result<usize, IoError> {
    token.parse().map_err(|_| parse_error(line, format!("`{token}` is not a number")))
}

fn row(line: usize, text: &str, len: usize) -> Result<Vec<usize>, IoError> {
    let values: Vec<usize> = text.split_whitespace().map(|t| number(line, t)).collect::<Result<_, _>>()?;
    if values.len() != len {
        return Err(parse_error(line, format!("expected {len} entries, found {}", values.len())));
    }
    Ok(values)
}

fn rows(lines: &mut Lines, n: usize, what: &str) -> Result<Vec<Vec<usize>>, IoError> {
    (0..n)
        .map(|_| {
            let (line, text) = lines.expect(what)?;
            row(line, text, n)
        })
        .collect()
}

/// `keyword value` pairs after the first token of a header line.
fn header<'a>(line: usize, text: &'a str, keys: &[&str]) -> Result<Vec<&'a str>, IoError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let expected = 2 + 2 * keys.len();
    if tokens.len() != expected {
        let shape: Vec<String> = keys.iter().map(|k| format!("{k} <…>")).collect();
        return Err(parse_error(line, format!("expected `{} <name> {}`", tokens[0], shape.join(" "))));
    }
    let mut values = vec![tokens[1]];
    for (i, key) in keys.iter().enumerate() {
        if tokens[2 + 2 * i] != *key {
            return Err(parse_error(line, format!("expected `{key}`, found `{}`", tokens[2 + 2 * i])));
        }
        values.push(tokens[3 + 2 * i]);
    }
    Ok(values)
}

pub(super) fn parse(text: &str, library: &Library) -> Result<Value, IoError> {
    let mut lines = Lines::new(text);
    let (line, first) = lines.peek().ok_or_else(|| parse_error(1, "empty file"))?;
    match first.split_whitespace().next().unwrap_or("") {
        "group" => parse_group(&mut lines).map(Value::Group),
        "ring" => parse_ring(&mut lines).map(Value::Ring),
        "map" => parse_map(&mut lines, library).map(Value::Map),
        "semilinear" => parse_semilinear(&mut lines).map(Value::Semilinear),
        "category" => parse_category(&mut lines, false).map(|v| match v {
            Parsed::Plain(c) => Value::Category(c),
            Parsed::Factorization(f) => Value::Factorization(f),
        }),
        "factorization" => parse_category(&mut lines, true).map(|v| match v {
            Parsed::Plain(c) => Value::Category(c),
            Parsed::Factorization(f) => Value::Factorization(f),
        }),
        other => Err(parse_error(line, format!("unknown structure `{other}`"))),
    }
}

fn parse_group(lines: &mut Lines) -> Result<Arc<FiniteGroup>, IoError> {
    let (line, text) = lines.expect("header")?;
    let h = header(line, text, &["order"])?;
    let n = number(line, h[1])?;
    let table = rows(lines, n, "a table row")?;
    lines.finish()?;
    FiniteGroup::from_table(h[0], &table).map(Arc::new).map_err(|e| IoError::Validation(e.to_string()))
}

fn block(lines: &mut Lines, label: &str, n: usize) -> Result<Vec<Vec<usize>>, IoError> {
    let (line, text) = lines.expect(label)?;
    if text != label {
        return Err(parse_error(line, format!("expected `{label}`, found `{text}`")));
    }
    rows(lines, n, &format!("a row of the {label} block"))
}

fn parse_ring(lines: &mut Lines) -> Result<Arc<FiniteRing>, IoError> {
    let (line, text) = lines.expect("header")?;
    let h = header(line, text, &["order"])?;
    let n = number(line, h[1])?;
    let add = block(lines, "add:", n)?;
    let mul = block(lines, "mul:", n)?;
    let involution = match lines.next() {
        None => None,
        Some((_, "involution:")) => {
            let (line, text) = lines.expect("the involution row")?;
            Some(row(line, text, n)?)
        }
        Some((line, text)) => return Err(parse_error(line, format!("expected `involution:`, found `{text}`"))),
    };
    lines.finish()?;
    FiniteRing::from_tables(h[0], &add, &mul, involution).map(Arc::new).map_err(|e| IoError::Validation(e.to_string()))
}

fn parse_map(lines: &mut Lines, library: &Library) -> Result<NamedMap, IoError> {
    let (line, text) = lines.expect("header")?;
    let h = header(line, text, &["from", "to", "variance"])?;
    let variance: Variance = h[3].parse().map_err(|e: String| parse_error(line, e))?;
    let (src, dst) = (h[1], h[2]);
    let ring_names = |s: &str| s.strip_prefix("ring:").map(str::to_string);
    let as_groups = match (ring_names(src), ring_names(dst)) {
        (None, None) => library.group(src).zip(library.group(dst)),
        _ => None,
    };
    if let Some((a, b)) = as_groups {
        let (l, t) = lines.expect("the image row")?;
        let images = row(l, t, a.order())?;
        lines.finish()?;
        let m = Morphism::new(a, b, images, variance).map_err(|e| IoError::Validation(e.to_string()))?;
        return Ok(NamedMap::Group { name: h[0].to_string(), map: m });
    }
    let strip = |s: &str| s.strip_prefix("ring:").unwrap_or(s).to_string();
    let (a, b) = match (library.ring(&strip(src)), library.ring(&strip(dst))) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(parse_error(line, format!("unknown structures `{src}` and `{dst}`"))),
    };
    let (l, t) = lines.expect("the image row")?;
    let images = row(l, t, a.order())?;
    lines.finish()?;
    let m = Morphism::new(a, b, images, variance).map_err(|e| IoError::Validation(e.to_string()))?;
    Ok(NamedMap::Ring { name: h[0].to_string(), map: m })
}

/// `F<q>` with `q = p²`.
pub(super) fn field(name: &str) -> Option<FieldFq2> {
    let q: usize = name.strip_prefix('F')?.parse().ok()?;
    let p = (2..=13).find(|p| p * p == q)?;
    FieldFq2::new(p).ok()
}

fn parse_semilinear(lines: &mut Lines) -> Result<NamedSemilinear, IoError> {
    let (line, text) = lines.expect("header")?;
    let h = header(line, text, &["over", "rows", "cols", "twist"])?;
    let f = field(h[1]).ok_or_else(|| parse_error(line, format!("unsupported field `{}`", h[1])))?;
    let (r, c) = (number(line, h[2])?, number(line, h[3])?);
    let twist: Variance = h[4].parse().map_err(|e: String| parse_error(line, e))?;
    let mut entries = Vec::with_capacity(r);
    for _ in 0..r {
        let (line, text) = lines.expect("a matrix row")?;
        let symbols: Vec<&str> = text.split_whitespace().collect();
        if symbols.len() != c {
            return Err(parse_error(line, format!("expected {c} entries, found {}", symbols.len())));
        }
        let values = symbols
            .iter()
            .map(|s| f.parse_symbol(s).ok_or_else(|| parse_error(line, format!("`{s}` is not an element of {}", f.name()))))
            .collect::<Result<Vec<_>, _>>()?;
        entries.push(values);
    }
    lines.finish()?;
    let map = SemilinearMap::new(Arc::new(f), Matrix::from_rows(r, c, &entries), twist)
        .map_err(|e| IoError::Validation(e.to_string()))?;
    Ok(NamedSemilinear { name: h[0].to_string(), map })
}

enum Parsed {
    Plain(FiniteCategory),
    Factorization(FactorizationCategory),
}

#[derive(Default)]
struct CategoryText {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    anti: Vec<bool>,
    ids: HashMap<usize, usize>,
    reverse: HashMap<usize, usize>,
    compose: HashMap<(usize, usize), usize>,
    add: HashMap<(usize, usize), usize>,
    zero: HashMap<(usize, usize, bool), usize>,
}

impl CategoryText {
    fn object(&self, line: usize, name: &str) -> Result<usize, IoError> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| parse_error(line, format!("unknown object `{name}`")))
    }

    fn arrow(&self, line: usize, name: &str) -> Result<usize, IoError> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| parse_error(line, format!("unknown arrow `{name}`")))
    }
}

fn parse_category(lines: &mut Lines, factorization: bool) -> Result<Parsed, IoError> {
    let (line, text) = lines.expect("header")?;
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(parse_error(line, "expected `category <name>`"));
    }
    let name = tokens[1];
    let mut c = CategoryText::default();
    while let Some((line, text)) = lines.next() {
        let (head, tail) = match text.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (text, None),
        };
        let words: Vec<&str> = head.split_whitespace().collect();
        let eq = |words: &[&str], n: usize| -> Result<(), IoError> {
            if words.len() != n + 2 || words[n] != "=" {
                return Err(parse_error(line, format!("malformed `{}` line", words[0])));
            }
            Ok(())
        };
        match (words[0], tail) {
            ("objects", Some(rest)) if words.len() == 1 => {
                if !c.objects.is_empty() {
                    return Err(parse_error(line, "objects declared twice"));
                }
                c.objects = rest.split_whitespace().map(str::to_string).collect();
            }
            (kind @ ("hom" | "an"), Some(rest)) if words.len() == 3 => {
                if kind == "an" && !factorization {
                    return Err(parse_error(line, "`an` lines need a factorization header"));
                }
                let (s, t) = (c.object(line, words[1])?, c.object(line, words[2])?);
                for a in rest.split_whitespace() {
                    if c.arrows.iter().any(|b| b.name == a) {
                        return Err(parse_error(line, format!("arrow `{a}` declared twice")));
                    }
                    c.arrows.push(Arrow::new(a, s, t));
                    c.anti.push(kind == "an");
                }
            }
            ("id", None) => {
                eq(&words, 2)?;
                let (x, f) = (c.object(line, words[1])?, c.arrow(line, words[3])?);
                c.ids.insert(x, f);
            }
            ("reverse", None) if factorization => {
                eq(&words, 2)?;
                let (x, f) = (c.object(line, words[1])?, c.arrow(line, words[3])?);
                c.reverse.insert(x, f);
            }
            ("compose", None) => {
                eq(&words, 3)?;
                let (g, f, h) = (c.arrow(line, words[1])?, c.arrow(line, words[2])?, c.arrow(line, words[4])?);
                if c.compose.insert((g, f), h).is_some() {
                    return Err(parse_error(line, "composite declared twice"));
                }
            }
            ("add", None) => {
                eq(&words, 3)?;
                let (f, g, h) = (c.arrow(line, words[1])?, c.arrow(line, words[2])?, c.arrow(line, words[4])?);
                c.add.insert((f, g), h);
            }
            ("zero", None) => {
                eq(&words, 3)?;
                let (a, b, z) = (c.object(line, words[1])?, c.object(line, words[2])?, c.arrow(line, words[4])?);
                c.zero.insert((a, b, c.anti[z]), z);
            }
            _ => return Err(parse_error(line, format!("unrecognized line `{text}`"))),
        }
    }
    build_category(name, c, factorization)
}

fn build_category(name: &str, c: CategoryText, factorization: bool) -> Result<Parsed, IoError> {
    let invalid = |s: String| IoError::Validation(s);
    let n = c.objects.len();
    let straight: Vec<usize> = (0..c.arrows.len()).filter(|&f| !c.anti[f]).collect();
    let anti: Vec<usize> = (0..c.arrows.len()).filter(|&f| c.anti[f]).collect();
    // straight arrows first, then anti, each in file order
    let order: Vec<usize> = straight.iter().chain(&anti).copied().collect();
    let mut position = vec![0; c.arrows.len()];
    for (i, &f) in order.iter().enumerate() {
        position[f] = i;
    }
    let identities = (0..n)
        .map(|x| c.ids.get(&x).map(|&f| position[f]).ok_or_else(|| invalid(format!("no identity for {}", c.objects[x]))))
        .collect::<Result<Vec<_>, _>>()?;
    if identities.iter().any(|&i| i >= straight.len()) {
        return Err(invalid("identities must be straight".into()));
    }
    let arrows: Vec<Arrow> = order.iter().map(|&f| c.arrows[f].clone()).collect();
    let t = arrows.len();
    let is_id = |f: usize| identities.contains(&f);
    let mut table = vec![NONE; t * t];
    for g in 0..t {
        for f in 0..t {
            if arrows[g].source != arrows[f].target {
                continue;
            }
            table[g * t + f] = if is_id(g) {
                f
            } else if is_id(f) {
                g
            } else {
                let h = c.compose.get(&(order[g], order[f])).ok_or_else(|| {
                    invalid(format!("missing `compose {} {} = …`", arrows[g].name, arrows[f].name))
                })?;
                position[*h]
            };
        }
    }
    let m = straight.len();
    let additive_of = |range: std::ops::Range<usize>| -> Result<Option<Additive>, IoError> {
        let k = range.len();
        let mut add = vec![NONE; k * k];
        let mut any = false;
        for (&(f, g), &h) in &c.add {
            let (f, g, h) = (position[f], position[g], position[h]);
            if range.contains(&f) {
                if !range.contains(&g) || !range.contains(&h) {
                    return Err(invalid(format!("`add` mixes straight and anti arrows at {}", arrows[f].name)));
                }
                add[(f - range.start) * k + (g - range.start)] = h - range.start;
                any = true;
            }
        }
        if !any {
            return Ok(None);
        }
        let mut zero = vec![NONE; n * n];
        for (&(a, b, _), &z) in &c.zero {
            let z = position[z];
            if range.contains(&z) {
                zero[a * n + b] = z - range.start;
            }
        }
        if zero.contains(&NONE) {
            return Err(invalid("every hom-set of an additive category needs a zero".into()));
        }
        Ok(Some(Additive { add, zero }))
    };
    let underlying = FiniteCategory::new(
        name,
        c.objects.clone(),
        arrows[..m].to_vec(),
        identities.clone(),
        (0..m * m).map(|i| table[(i / m) * t + i % m]).collect(),
        additive_of(0..m)?,
    )
    .map_err(|e| invalid(e.to_string()))?;
    if !factorization {
        return Ok(Parsed::Plain(underlying));
    }
    let reverse = (0..n)
        .map(|x| c.reverse.get(&x).map(|&f| position[f]).ok_or_else(|| invalid(format!("no reverse morphism for {}", c.objects[x]))))
        .collect::<Result<Vec<_>, _>>()?;
    let an_additive = additive_of(m..t)?;
    FactorizationCategory::new(underlying, arrows[m..].to_vec(), table, reverse, an_additive)
        .map(Parsed::Factorization)
        .map_err(|e| invalid(e.to_string()))
}
