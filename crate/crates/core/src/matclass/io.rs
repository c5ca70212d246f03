use super::field::{ExtField, FiniteField, PrimeField};
use super::matrix::Matrix;
use super::poly::Poly;
use super::MatclassError;

/// A matrix read from a file, over a prime field or an extension.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Prime(Matrix<PrimeField>),
    Ext(Matrix<ExtField>),
}

fn perr(line: usize, message: impl Into<String>) -> MatclassError {
    MatclassError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the plain-text matrix format: `p e n`, then the defining polynomial
/// (e + 1 coefficients, lowest first) when e > 1, then n rows. Entries are
/// integers, or `(c0,c1,…)` coordinate tuples of length e over an extension.
/// Blank lines and `#` comments are ignored.
pub fn parse_matrix(text: &str) -> Result<AnyMatrix, MatclassError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty matrix file"))?;
    let h: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| perr(hl, format!("`{t}` is not an integer"))))
        .collect::<Result<_, _>>()?;
    let [p, e, n] = h[..] else {
        return Err(perr(hl, "header must be `p e n`"));
    };
    let n = n as usize;
    let base = PrimeField::new(p).map_err(|err| perr(hl, err.to_string()))?;
    if e == 0 {
        return Err(perr(hl, "extension degree must be at least 1"));
    }
    let ext = if e > 1 {
        let (ml, mline) = lines.next().ok_or_else(|| perr(hl + 1, "missing defining polynomial"))?;
        let c: Vec<u64> = mline
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map(|v| base.from_i64(v)).map_err(|_| perr(ml, format!("`{t}` is not an integer"))))
            .collect::<Result<_, _>>()?;
        if c.len() != e as usize + 1 {
            return Err(perr(ml, format!("defining polynomial needs {} coefficients", e + 1)));
        }
        Some(ExtField::with_modulus(p, c).map_err(|err| perr(ml, err.to_string()))?)
    } else {
        None
    };
    let mut rows: Vec<(usize, Vec<String>)> = Vec::with_capacity(n);
    for _ in 0..n {
        let (l, text) = lines
            .next()
            .ok_or_else(|| perr(0, format!("expected {n} matrix rows, found {}", rows.len())))?;
        rows.push((l, split_entries(text, l)?));
    }
    if let Some((l, _)) = lines.next() {
        return Err(perr(l, "trailing content after the matrix rows"));
    }
    for (l, r) in &rows {
        if r.len() != n {
            return Err(perr(*l, format!("expected {n} entries, found {}", r.len())));
        }
    }
    match ext {
        None => {
            let data = rows
                .iter()
                .flat_map(|(l, r)| r.iter().map(move |t| (*l, t)))
                .map(|(l, t)| {
                    t.parse::<i64>()
                        .map(|v| base.from_i64(v))
                        .map_err(|_| perr(l, format!("`{t}` is not an integer")))
                })
                .collect::<Result<_, _>>()?;
            Ok(AnyMatrix::Prime(Matrix::new(base, n, n, data)?))
        }
        Some(k) => {
            let data = rows
                .iter()
                .flat_map(|(l, r)| r.iter().map(move |t| (*l, t)))
                .map(|(l, t)| parse_tuple(&k, t, l))
                .collect::<Result<_, _>>()?;
            Ok(AnyMatrix::Ext(Matrix::new(k, n, n, data)?))
        }
    }
}

/// Splits a row into entries, keeping parenthesised tuples whole.
fn split_entries(text: &str, line: usize) -> Result<Vec<String>, MatclassError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err(perr(line, "unbalanced `)`"));
                }
                depth -= 1;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(perr(line, "unbalanced `(`"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_tuple(k: &ExtField, t: &str, line: usize) -> Result<Vec<u64>, MatclassError> {
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| perr(line, format!("`{t}` is not a coordinate tuple")))?;
    let c: Vec<u64> = inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map(|v| k.base().from_i64(v))
                .map_err(|_| perr(line, format!("`{x}` is not an integer")))
        })
        .collect::<Result<_, _>>()?;
    if c.len() != k.degree() as usize {
        return Err(perr(line, format!("`{t}` needs {} coordinates", k.degree())));
    }
    Ok(k.from_coords(&c))
}

/// Writes a matrix in the format read by [`parse_matrix`].
pub fn format_matrix<F: FiniteField>(a: &Matrix<F>) -> String {
    let f = a.field();
    let mut s = format!("{} {} {}\n", f.characteristic(), f.degree(), a.rows());
    if f.degree() > 1 {
        let m: Vec<String> = f.defining_poly().iter().map(u64::to_string).collect();
        s.push_str(&m.join(" "));
        s.push('\n');
    }
    for row in a.to_strings() {
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parses a polynomial in x: integers, `x`, `+ - * ^`, parentheses and
/// implicit multiplication (`2x`, `(x-1)(x+1)`).
pub fn parse_poly<F: FiniteField>(field: &F, text: &str) -> Result<Poly<F>, MatclassError> {
    let tokens = tokenize(text)?;
    let mut p = PolyParser {
        field,
        tokens,
        pos: 0,
        text,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    X,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, MatclassError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let t = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let v = text[start..i]
                    .parse()
                    .map_err(|_| perr(1, format!("number too large at column {}", start + 1)))?;
                out.push((start, Tok::Num(v)));
                continue;
            }
            'x' | 'X' => Tok::X,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            _ => return Err(perr(1, format!("unexpected `{c}` at column {}", i + 1))),
        };
        out.push((i, t));
        i += c.len_utf8();
    }
    Ok(out)
}

struct PolyParser<'a, F: FiniteField> {
    field: &'a F,
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    text: &'a str,
}

impl<F: FiniteField> PolyParser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn error(&self, what: &str) -> MatclassError {
        let col = self.tokens.get(self.pos).map_or(self.text.len(), |(c, _)| *c) + 1;
        perr(1, format!("{what} at column {col} in `{}`", self.text))
    }

    fn expr(&mut self) -> Result<Poly<F>, MatclassError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>, MatclassError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Num(_) | Tok::X | Tok::Open) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<F>, MatclassError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly<F>, MatclassError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(&Tok::Num(e)) => {
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.error("expected an exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<F>, MatclassError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                let p = self.field.characteristic();
                Ok(Poly::constant(self.field.clone(), self.field.from_i64((v % p) as i64)))
            }
            Some(Tok::X) => {
                self.pos += 1;
                Ok(Poly::x(self.field.clone()))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected a number, x or `(`")),
        }
    }
}

/// Parses `p:f1,f2,…` into a prime field and monic factors (commas inside
/// parentheses are not separators).
pub fn parse_factor_spec(spec: &str) -> Result<(PrimeField, Vec<Poly<PrimeField>>), MatclassError> {
    let (p, rest) = spec
        .split_once(':')
        .ok_or_else(|| perr(1, "factor list must look like `p:f1,f2,...`"))?;
    let p: u64 = p
        .trim()
        .parse()
        .map_err(|_| perr(1, format!("`{p}` is not a prime")))?;
    let field = PrimeField::new(p)?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in rest.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    parts.push(cur);
    let polys = parts
        .iter()
        .map(|s| parse_poly(&field, s.trim()).map(|f| f.monic()))
        .collect::<Result<_, _>>()?;
    Ok((field, polys))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_expressions() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(parse_poly(&f, "(x-1)^2").unwrap().to_string(), "x^2 + 1");
        assert_eq!(parse_poly(&f, "x^23-1").unwrap().to_string(), "x^23 + 1");
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(parse_poly(&f5, "2x^2 - 3x + 1").unwrap().to_string(), "2*x^2 + 2*x + 1");
        assert_eq!(
            parse_poly(&f5, "(x-1)(x+1)").unwrap(),
            parse_poly(&f5, "x^2 - 1").unwrap()
        );
        assert_eq!(parse_poly(&f5, "-x^2").unwrap().to_string(), "4*x^2");
        assert!(parse_poly(&f5, "x^").is_err());
        assert!(parse_poly(&f5, "(x").is_err());
        assert!(parse_poly(&f5, "x $ 1").is_err());
    }

    #[test]
    fn factor_specs() {
        let (f, fs) = parse_factor_spec("2:(x-1)^2,(x-1)^8").unwrap();
        assert_eq!(f.p(), 2);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[1].degree(), Some(8));
        assert!(parse_factor_spec("4:x").is_err());
    }

    #[test]
    fn matrix_files_round_trip() {
        let text = "3 1 2\n1 2\n0 -1\n";
        let AnyMatrix::Prime(m) = parse_matrix(text).unwrap() else {
            panic!("prime field expected")
        };
        assert_eq!(m.get(1, 1), &2);
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), AnyMatrix::Prime(m));

        let ext = "2 2 2\n1 1 1\n(1,0) (0,1)\n(0, 0) (1,1)\n";
        let AnyMatrix::Ext(m) = parse_matrix(ext).unwrap() else {
            panic!("extension expected")
        };
        assert_eq!(m.get(1, 1), &vec![1, 1]);
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), AnyMatrix::Ext(m));
    }

    #[test]
    fn matrix_file_errors() {
        assert!(matches!(parse_matrix(""), Err(MatclassError::Parse { .. })));
        assert!(matches!(parse_matrix("4 1 1\n1\n"), Err(MatclassError::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("2 1 2\n1 0\n1\n"), Err(MatclassError::Parse { line: 3, .. })));
        assert!(matches!(parse_matrix("2 2 1\n1 0 1\n(1,0)\n"), Err(MatclassError::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("2 1 1\n1\n1\n"), Err(MatclassError::Parse { line: 3, .. })));
    }
}
