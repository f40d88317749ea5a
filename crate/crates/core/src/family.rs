//! Graph expressions such as `(2*C4)~(3*C4+K3)+5*C4`.
//!
//! ```text
//! union := join ('+' join)*
//! join  := term ('~' term)*
//! term  := INT '*' term | atom
//! atom  := 'K' INT | 'C' INT | 'MC(' INT ',' INT ',' INT ')' | 'co(' union ')' | '(' union ')'
//! ```
//!
//! Copies bind tightest, then join, then union. Nested unions and joins are
//! flattened while parsing; both operations are associative with the same
//! vertex labeling, so the built graph does not change.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, MulticoneParams, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Complete(usize),
    Cycle(usize),
    Multicone(usize, usize, usize),
    Copies(usize, Box<Expr>),
    Union(Vec<Expr>),
    Join(Vec<Expr>),
    Complement(Box<Expr>),
}

impl Expr {
    /// Vertex count without building, saturating.
    pub fn order(&self) -> usize {
        match self {
            Expr::Complete(w) => *w,
            Expr::Cycle(n) => *n,
            Expr::Multicone(w, m, n) => w.saturating_add(m.saturating_mul(*n)),
            Expr::Copies(k, e) => k.saturating_mul(e.order()),
            Expr::Union(es) | Expr::Join(es) => {
                es.iter().fold(0usize, |a, e| a.saturating_add(e.order()))
            }
            Expr::Complement(e) => e.order(),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        let order = self.order();
        if order > MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "expression vertex count",
                actual: order,
                limit: MAX_VERTICES,
            });
        }
        match self {
            Expr::Complete(w) => Graph::complete(*w),
            Expr::Cycle(n) => Graph::cycle(*n),
            Expr::Multicone(w, m, n) => Graph::multicone(MulticoneParams::new(*w, *m, *n)?),
            Expr::Copies(k, e) => Graph::copies(*k, &e.build()?),
            Expr::Union(es) => fold(es, Graph::disjoint_union),
            Expr::Join(es) => fold(es, Graph::join),
            Expr::Complement(e) => Ok(e.build()?.complement()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Union(_) => 0,
            Expr::Join(_) => 1,
            Expr::Copies(..) => 2,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Complete(w) => write!(f, "K{w}"),
            Expr::Cycle(n) => write!(f, "C{n}"),
            Expr::Multicone(w, m, n) => write!(f, "MC({w},{m},{n})"),
            Expr::Copies(k, e) => {
                write!(f, "{k}*")?;
                e.write_at(f, 2)
            }
            Expr::Union(es) => write_list(f, es, "+", 1),
            Expr::Join(es) => write_list(f, es, "~", 2),
            Expr::Complement(e) => {
                write!(f, "co(")?;
                e.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

fn fold(es: &[Expr], op: fn(&Graph, &Graph) -> Result<Graph>) -> Result<Graph> {
    let mut it = es.iter();
    let mut acc = it
        .next()
        .expect("parser never builds empty lists")
        .build()?;
    for e in it {
        acc = op(&acc, &e.build()?)?;
    }
    Ok(acc)
}

fn write_list(f: &mut fmt::Formatter<'_>, es: &[Expr], sep: &str, min: u8) -> fmt::Result {
    for (i, e) in es.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        // A nested list of the same kind would be flattened by the parser.
        e.write_at(
            f,
            if e.precedence() == min - 1 {
                min + 1
            } else {
                min
            },
        )?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let e = p.union()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_family(text: &str) -> Result<Graph> {
    parse_expr(text)?.build()
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("digits")
            .parse()
            .map_err(|_| Error::Syntax {
                position: start,
                message: "number too large".into(),
            })
    }

    fn union(&mut self) -> Result<Expr> {
        let mut items = vec![self.join()?];
        while self.eat("+") {
            items.push(self.join()?);
        }
        Ok(flatten(items, Expr::Union))
    }

    fn join(&mut self) -> Result<Expr> {
        let mut items = vec![self.term()?];
        while self.eat("~") {
            items.push(self.term()?);
        }
        Ok(flatten(items, Expr::Join))
    }

    fn term(&mut self) -> Result<Expr> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            let k = self.int()?;
            if k == 0 {
                return Err(Error::Syntax {
                    position: start,
                    message: "copy count must be positive".into(),
                });
            }
            self.expect("*")?;
            return Ok(Expr::Copies(k, Box::new(self.term()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.peek().map(|_| self.pos);
        if self.eat("(") {
            let e = self.union()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("co(") {
            let e = self.union()?;
            self.expect(")")?;
            return Ok(Expr::Complement(Box::new(e)));
        }
        if self.eat("MC(") {
            let w = self.int()?;
            self.expect(",")?;
            let m = self.int()?;
            self.expect(",")?;
            let n = self.int()?;
            self.expect(")")?;
            return Ok(Expr::Multicone(w, m, n));
        }
        if self.eat("K") {
            return Ok(Expr::Complete(self.int()?));
        }
        if self.eat("C") {
            return Ok(Expr::Cycle(self.int()?));
        }
        self.pos = start.unwrap_or(self.pos);
        Err(self.error("expected K<w>, C<n>, MC(w,m,n), co(...) or '('"))
    }
}

fn flatten(items: Vec<Expr>, make: fn(Vec<Expr>) -> Expr) -> Expr {
    if items.len() == 1 {
        return items.into_iter().next().expect("one item");
    }
    let mut flat = Vec::new();
    for e in items {
        match (e, make(Vec::new())) {
            (Expr::Union(inner), Expr::Union(_)) | (Expr::Join(inner), Expr::Join(_)) => {
                flat.extend(inner)
            }
            (e, _) => flat.push(e),
        }
    }
    make(flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isomorphism::are_isomorphic;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        let w5 = parse_family("K1~C4").unwrap();
        assert_eq!(
            w5,
            Graph::multicone(MulticoneParams::new(1, 1, 4).unwrap()).unwrap()
        );

        let lhs = parse_family("(2*C4)~(3*C4+K3)+5*C4").unwrap();
        assert_eq!(
            (lhs.order(), lhs.edge_count(), lhs.component_count()),
            (43, 163, 6)
        );

        let mc = parse_family("MC(3,10,4)").unwrap();
        assert_eq!((mc.order(), mc.edge_count()), (43, 163));
    }

    #[test]
    fn precedence() {
        // copies > join > union
        assert_eq!(
            parse_expr("2*C4~K1+K2").unwrap(),
            Expr::Union(vec![
                Expr::Join(vec![
                    Expr::Copies(2, Box::new(Expr::Cycle(4))),
                    Expr::Complete(1)
                ]),
                Expr::Complete(2),
            ])
        );
        assert_eq!(parse_family("K1~K2+K1").unwrap().component_count(), 2);
        assert_eq!(parse_family(" co( C5 ) ").unwrap().edge_count(), 5);
        assert!(
            are_isomorphic(&parse_family("co(C5)").unwrap(), &Graph::cycle(5).unwrap()).unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        for (text, pos) in [
            ("K1~", 3),
            ("K1 + X", 5),
            ("MC(1,2)", 6),
            ("0*K1", 0),
            ("C4)", 2),
            ("", 0),
        ] {
            match parse_expr(text) {
                Err(Error::Syntax { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_family("C2"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            parse_family("100*K1"),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(
            parse_family("99999999999999999999*K1"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn printer() {
        let e = parse_expr("((2*C4)~(3*C4+K3))+5*C4").unwrap();
        assert_eq!(e.to_string(), "2*C4~(3*C4+K3)+5*C4");
        assert_eq!(parse_expr("2*(K1~K2)").unwrap().to_string(), "2*(K1~K2)");
        assert_eq!(
            parse_expr("co(K1+K2)~MC(1,1,3)").unwrap().to_string(),
            "co(K1+K2)~MC(1,1,3)"
        );
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (1usize..4).prop_map(Expr::Complete),
            (3usize..6).prop_map(Expr::Cycle),
            (1usize..3, 1usize..3, 3usize..5).prop_map(|(w, m, n)| Expr::Multicone(w, m, n)),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (1usize..4, inner.clone()).prop_map(|(k, e)| Expr::Copies(k, Box::new(e))),
                prop::collection::vec(inner.clone(), 2..4).prop_map(|v| flatten(v, Expr::Union)),
                prop::collection::vec(inner.clone(), 2..4).prop_map(|v| flatten(v, Expr::Join)),
                inner.prop_map(|e| Expr::Complement(Box::new(e))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let reparsed = parse_expr(&printed).unwrap();
            prop_assert_eq!(&reparsed, &e);
            prop_assert_eq!(parse_expr(&reparsed.to_string()).unwrap(), reparsed);
            if e.order() <= MAX_VERTICES {
                prop_assert_eq!(parse_family(&printed).unwrap(), e.build().unwrap());
            }
        }
    }
}
