use super::Formula;

struct Glyphs {
    top: &'static str,
    bot: &'static str,
    and: &'static str,
    or: &'static str,
    imp: &'static str,
    coimp: &'static str,
}

const ASCII: Glyphs = Glyphs { top: "true", bot: "false", and: "&", or: "|", imp: "->", coimp: "-<" };

const UNICODE: Glyphs = Glyphs { top: "⊤", bot: "⊥", and: "∧", or: "∨", imp: "⇒", coimp: "⇐" };

// Binding strength, loosest first. Iff never appears: it is expanded.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const TEMP: u8 = 4;
const UNARY: u8 = 5;

fn prec(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        Imp(..) | CoImp(..) => IMP,
        Or(..) => OR,
        And(..) => AND,
        Until(..) | Since(..) => TEMP,
        Next(_) | Yesterday(_) | Hence(_) | Hist(_) => UNARY,
        Var(_) | Top | Bot => UNARY + 1,
    }
}

/// ASCII rendering with the fewest parentheses that still round-trip.
pub fn print(f: &Formula) -> String {
    let mut s = String::new();
    go(f, &ASCII, &mut s);
    s
}

pub fn print_unicode(f: &Formula) -> String {
    let mut s = String::new();
    go(f, &UNICODE, &mut s);
    s
}

fn wrap(f: &Formula, paren: bool, g: &Glyphs, out: &mut String) {
    if paren {
        out.push('(');
        go(f, g, out);
        out.push(')');
    } else {
        go(f, g, out);
    }
}

fn go(f: &Formula, g: &Glyphs, out: &mut String) {
    use Formula::*;
    let (op, a, b, right_assoc) = match f {
        Var(v) => return out.push_str(v),
        Top => return out.push_str(g.top),
        Bot => return out.push_str(g.bot),
        Next(a) | Yesterday(a) | Hence(a) | Hist(a) => {
            out.push_str(match f {
                Next(_) => "X ",
                Yesterday(_) => "Y ",
                Hence(_) => "G ",
                _ => "H ",
            });
            return wrap(a, prec(a) < UNARY, g, out);
        }
        And(a, b) => (g.and, a, b, false),
        Or(a, b) => (g.or, a, b, false),
        Imp(a, b) => (g.imp, a, b, true),
        CoImp(a, b) => (g.coimp, a, b, true),
        Until(a, b) => ("U", a, b, true),
        Since(a, b) => ("S", a, b, true),
    };
    let p = prec(f);
    let (pa, pb) = (prec(a), prec(b));
    let (wrap_a, wrap_b) = if right_assoc { (pa <= p, pb < p) } else { (pa < p, pb <= p) };
    wrap(a, wrap_a, g, out);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    wrap(b, wrap_b, g, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn minimal_parentheses() {
        let p = || Formula::var("p");
        assert_eq!(print(&Formula::imp(p(), p())), "p -> p");
        assert_eq!(print(&parse("F (p -> X p)").unwrap()), "true U (p -> X p)");
        assert_eq!(print(&Formula::coimp(p(), Formula::var("q"))), "p -< q");
        assert_eq!(print(&parse("(p -> q) -> r").unwrap()), "(p -> q) -> r");
        assert_eq!(print(&parse("p -> q -> r").unwrap()), "p -> q -> r");
        assert_eq!(print(&parse("p & (q & r)").unwrap()), "p & (q & r)");
        assert_eq!(print(&parse("(p & q) & r").unwrap()), "p & q & r");
        assert_eq!(print(&parse("X (p U q)").unwrap()), "X (p U q)");
        assert_eq!(print(&parse("(p U q) U r").unwrap()), "(p U q) U r");
        assert_eq!(print(&parse("~p").unwrap()), "p -> false");
        assert_eq!(print_unicode(&parse("p -< q -> false").unwrap()), "p ⇐ q ⇒ ⊥");
    }
}
