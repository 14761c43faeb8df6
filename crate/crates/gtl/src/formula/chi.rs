use super::{big_and, big_or, Formula};
use crate::typespace::{enumerate_types_capped, LabelledSystem, SigmaType};
use crate::{Error, Result};

/// The three characteristic formulas of a world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characteristic {
    pub chi0: Formula,
    pub chi_plus: Formula,
    pub chi_minus: Formula,
}

fn split(sys: &LabelledSystem, t: SigmaType) -> (Formula, Formula) {
    let (mut inside, mut outside) = (vec![], vec![]);
    for (i, f) in sys.sigma.formulas().iter().enumerate() {
        if t.has(i) {
            inside.push(f.clone());
        } else {
            outside.push(f.clone());
        }
    }
    (big_and(inside), big_or(outside))
}

/// `/\ D -> \/ (Sigma - D)`
fn forward(sys: &LabelledSystem, t: SigmaType) -> Formula {
    let (a, b) = split(sys, t);
    Formula::imp(a, b)
}

/// `/\ D -< \/ (Sigma - D)`
fn backward(sys: &LabelledSystem, t: SigmaType) -> Formula {
    let (a, b) = split(sys, t);
    Formula::coimp(a, b)
}

/// Build the characteristic formulas of world `w`. The outer conjunction over
/// all types needs the type enumeration, bounded by `cap`.
pub fn characteristic_formulas(sys: &LabelledSystem, w: &str, cap: usize) -> Result<Characteristic> {
    let wi = sys.world_index(w).ok_or_else(|| Error::UnknownWorld(w.to_string()))?;
    let leq = sys.leq();
    let comp = sys.components(&leq).into_iter().find(|c| c.contains(&wi)).expect("every world lies in a component");
    let mut family: Vec<SigmaType> = comp.iter().map(|&v| sys.labels[v]).collect();
    family.sort_unstable();
    family.dedup();
    let all = enumerate_types_capped(&sys.sigma, cap)?;

    let weak_neg = |f: Formula| Formula::coimp(Formula::Top, f);
    let present = big_and(family.iter().map(|&t| weak_neg(forward(sys, t))));
    let absent = big_and(all.iter().filter(|t| !family.contains(t)).map(|&t| Formula::not(backward(sys, t))));
    let chi0 = Formula::and(present, absent);
    let l = sys.labels[wi];
    Ok(Characteristic {
        chi_plus: Formula::and(backward(sys, l), chi0.clone()),
        chi_minus: Formula::imp(chi0.clone(), forward(sys, l)),
        chi0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, SigmaSet};

    #[test]
    fn two_type_example() {
        let sigma = SigmaSet::closure(&parse("p").unwrap());
        let sys = LabelledSystem::new(sigma, vec!["w".into()], vec![], vec![SigmaType(1)], vec![(0, 0)]).unwrap();
        let c = characteristic_formulas(&sys, "w", 24).unwrap();
        let chi0 = parse("(true -< (p -> false)) & ~(true -< p)").unwrap();
        assert_eq!(c.chi0, chi0);
        assert_eq!(c.chi_plus, Formula::and(parse("p -< false").unwrap(), chi0.clone()));
        assert_eq!(c.chi_minus, Formula::imp(chi0, parse("p -> false").unwrap()));
        assert!(matches!(characteristic_formulas(&sys, "v", 24), Err(Error::UnknownWorld(_))));
        assert!(matches!(characteristic_formulas(&sys, "w", 0), Err(Error::SigmaTooLarge { .. })));
    }
}
