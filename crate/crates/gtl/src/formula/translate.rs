use super::Formula;
use crate::{Error, Result};

/// The classical fragment: everything except co-implication.
pub fn is_classical(f: &Formula) -> bool {
    !f.contains_coimp()
}

/// Replace every variable `p` by `~~p`, leaving all other constructors alone.
pub fn negative_translation(f: &Formula) -> Result<Formula> {
    if !is_classical(f) {
        return Err(Error::CoImpliesNotClassical);
    }
    Ok(f.map_vars(&|v| Formula::not(Formula::not(Formula::var(v)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn examples() {
        let t = |s: &str| negative_translation(&parse(s).unwrap()).unwrap().to_string();
        assert_eq!(t("p"), "(p -> false) -> false");
        assert_eq!(t("p & q"), "((p -> false) -> false) & ((q -> false) -> false)");
        assert_eq!(t("X p"), "X ((p -> false) -> false)");
        assert_eq!(t("~p"), "((p -> false) -> false) -> false");
        assert!(negative_translation(&parse("p -< q").unwrap()).is_err());
    }
}
