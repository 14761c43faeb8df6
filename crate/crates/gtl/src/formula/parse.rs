use super::{Formula, KEYWORDS};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    Unary(char),
    Until,
    Since,
    And,
    Or,
    Imp,
    CoImp,
    Iff,
    LParen,
    RParen,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier {s:?}"),
        Tok::True => "'true'".into(),
        Tok::False => "'false'".into(),
        Tok::Not => "'~'".into(),
        Tok::Unary(c) => format!("'{c}'"),
        Tok::Until => "'U'".into(),
        Tok::Since => "'S'".into(),
        Tok::And => "'&'".into(),
        Tok::Or => "'|'".into(),
        Tok::Imp => "'->'".into(),
        Tok::CoImp => "'-<'".into(),
        Tok::Iff => "'<->'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = pos;
            while let Some(&(i, d)) = it.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = i + d.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            let word = &text[pos..end];
            let tok = match word {
                "true" => Tok::True,
                "false" => Tok::False,
                "U" => Tok::Until,
                "S" => Tok::Since,
                "X" | "Y" | "G" | "H" | "F" | "P" => Tok::Unary(word.chars().next().unwrap()),
                _ => {
                    debug_assert!(!KEYWORDS.contains(&word));
                    Tok::Ident(word.to_string())
                }
            };
            out.push((pos, tok));
            continue;
        }
        it.next();
        let rest = &text[pos + c.len_utf8()..];
        let (tok, extra) = match c {
            '(' => (Tok::LParen, 0),
            ')' => (Tok::RParen, 0),
            '~' | '¬' => (Tok::Not, 0),
            '&' | '∧' => (Tok::And, 0),
            '|' | '∨' => (Tok::Or, 0),
            '⊤' => (Tok::True, 0),
            '⊥' => (Tok::False, 0),
            '⇒' | '→' => (Tok::Imp, 0),
            '⇐' | '←' => (Tok::CoImp, 0),
            '⇔' | '↔' => (Tok::Iff, 0),
            '-' if rest.starts_with('>') => (Tok::Imp, 1),
            '-' if rest.starts_with('<') => (Tok::CoImp, 1),
            '<' if rest.starts_with("->") => (Tok::Iff, 2),
            _ => return Err(Error::UnknownToken { pos, found: c.to_string() }),
        };
        for _ in 0..extra {
            it.next();
        }
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        while self.peek() == Some(&Tok::Iff) {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        match self.peek() {
            Some(Tok::Imp) => {
                self.bump();
                Ok(Formula::imp(lhs, self.imp()?))
            }
            Some(Tok::CoImp) => {
                self.bump();
                Ok(Formula::coimp(lhs, self.imp()?))
            }
            _ => Ok(lhs),
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.binary_temporal()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            lhs = Formula::and(lhs, self.binary_temporal()?);
        }
        Ok(lhs)
    }

    fn binary_temporal(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        match self.peek() {
            Some(Tok::Until) => {
                self.bump();
                Ok(Formula::until(lhs, self.binary_temporal()?))
            }
            Some(Tok::Since) => {
                self.bump();
                Ok(Formula::since(lhs, self.binary_temporal()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Not) => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Unary(c)) => {
                let c = *c;
                self.bump();
                let a = self.unary()?;
                Ok(match c {
                    'X' => Formula::next(a),
                    'Y' => Formula::yesterday(a),
                    'G' => Formula::hence(a),
                    'H' => Formula::hist(a),
                    'F' => Formula::eventually(a),
                    _ => Formula::once(a),
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Ident(v)) => Ok(Formula::Var(v)),
            Some(Tok::True) => Ok(Formula::Top),
            Some(Tok::False) => Ok(Formula::Bot),
            Some(Tok::LParen) => {
                let f = self.iff()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(f),
                    Some(t) => {
                        self.at -= 1;
                        self.err(format!("expected ')', found {}", describe(&t)))
                    }
                    None => self.err("expected ')', found end of input"),
                }
            }
            Some(t) => Err(Error::Syntax { pos, msg: format!("expected a formula, found {}", describe(&t)) }),
            None => Err(Error::Syntax { pos, msg: "expected a formula, found end of input".into() }),
        }
    }
}

/// Parse the ASCII (or Unicode) concrete syntax.
pub fn parse(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, len: text.len() };
    let f = p.iff()?;
    if let Some(t) = p.peek() {
        let t = describe(t);
        return p.err(format!("unexpected {t} after formula"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_forms_expand() {
        assert_eq!(parse("p -> p").unwrap(), Formula::imp(Formula::var("p"), Formula::var("p")));
        assert_eq!(
            parse("F (p -> X p)").unwrap(),
            Formula::until(Formula::Top, Formula::imp(Formula::var("p"), Formula::next(Formula::var("p"))))
        );
        assert_eq!(parse("~p").unwrap(), Formula::imp(Formula::var("p"), Formula::Bot));
        assert_eq!(parse("P q").unwrap(), Formula::since(Formula::Top, Formula::var("q")));
        let p = Formula::var("p");
        let q = Formula::var("q");
        assert_eq!(parse("p <-> q").unwrap(), Formula::iff(p, q));
    }

    #[test]
    fn precedence_and_associativity() {
        let p = || Formula::var("p");
        let q = || Formula::var("q");
        let r = || Formula::var("r");
        assert_eq!(parse("p -> q -> r").unwrap(), Formula::imp(p(), Formula::imp(q(), r())));
        assert_eq!(parse("p -< q -> r").unwrap(), Formula::coimp(p(), Formula::imp(q(), r())));
        assert_eq!(parse("p & q & r").unwrap(), Formula::and(Formula::and(p(), q()), r()));
        assert_eq!(parse("p | q & r").unwrap(), Formula::or(p(), Formula::and(q(), r())));
        assert_eq!(parse("p U q S r").unwrap(), Formula::until(p(), Formula::since(q(), r())));
        assert_eq!(parse("X p U q").unwrap(), Formula::until(Formula::next(p()), q()));
        assert_eq!(parse("p U q & r").unwrap(), Formula::and(Formula::until(p(), q()), r()));
        assert_eq!(parse("~ ~ p").unwrap(), Formula::not(Formula::not(p())));
        assert_eq!(parse("Xp").unwrap(), Formula::var("Xp"));
    }

    #[test]
    fn unicode_glyphs() {
        assert_eq!(parse("p ⇒ (q ⇐ ⊥)").unwrap(), parse("p -> (q -< false)").unwrap());
        assert_eq!(parse("¬p ∧ ⊤ ∨ q").unwrap(), parse("~p & true | q").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse("p & &") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("p # q"), Err(Error::UnknownToken { pos: 2, .. })));
        assert!(matches!(parse("(p"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("p q"), Err(Error::Syntax { pos: 2, .. })));
        assert!(parse("").is_err());
        assert!(parse("U").is_err());
    }
}
