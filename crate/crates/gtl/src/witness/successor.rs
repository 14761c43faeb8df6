use super::Moment;
use crate::formula::SigmaSet;
use crate::typespace::SensibleRules;

/// A relation between the positions of two moments, as sorted pairs.
pub type Relation = Vec<(usize, usize)>;

/// Every fully confluent, convex, sensible nonempty relation from `m` to `n`.
///
/// Between two chains such a relation gives each source position an
/// interval `[lo, hi]` of targets with both endpoints monotone, `lo = 0` at
/// the bottom, `hi` maximal at the top, and no gaps between consecutive
/// intervals. Only those endpoint sequences are enumerated.
pub fn successor_relations(m: &Moment, n: &Moment, sigma: &SigmaSet) -> Vec<Relation> {
    let rules = SensibleRules::new(sigma);
    staircases(m, n, &|x, y| rules.ok(m.0[x], n.0[y]))
}

pub(crate) fn staircases(m: &Moment, n: &Moment, ok: &dyn Fn(usize, usize) -> bool) -> Vec<Relation> {
    let (a, b) = (m.height(), n.height());
    let sens: Vec<Vec<bool>> = (0..a).map(|x| (0..b).map(|y| ok(x, y)).collect()).collect();
    let mut out = Vec::new();
    let mut iv = Vec::with_capacity(a);
    fn go(x: usize, a: usize, b: usize, sens: &[Vec<bool>], iv: &mut Vec<(usize, usize)>, out: &mut Vec<Relation>) {
        if x == a {
            if iv.last().map(|&(_, h)| h) == Some(b - 1) {
                out.push(iv.iter().enumerate().flat_map(|(x, &(l, h))| (l..=h).map(move |y| (x, y))).collect());
            }
            return;
        }
        let (lo_min, lo_max, hi_min) = match iv.last() {
            None => (0, 0, 0),
            Some(&(l, h)) => (l, (h + 1).min(b - 1), h),
        };
        for lo in lo_min..=lo_max {
            if !sens[x][lo] {
                continue;
            }
            let mut hi = lo;
            // cells lo..hi must all be sensible; extend hi while they are
            while hi < b {
                if !sens[x][hi] {
                    break;
                }
                if hi >= hi_min {
                    iv.push((lo, hi));
                    go(x + 1, a, b, sens, iv, out);
                    iv.pop();
                }
                hi += 1;
            }
        }
    }
    if a > 0 && b > 0 {
        go(0, a, b, &sens, &mut iv, &mut out);
    }
    out
}

/// The inclusion-maximal members of [`successor_relations`].
pub fn maximal_relations(m: &Moment, n: &Moment, sigma: &SigmaSet) -> Vec<Relation> {
    maximal(successor_relations(m, n, sigma))
}

pub(crate) fn maximal(all: Vec<Relation>) -> Vec<Relation> {
    let subset = |r: &Relation, s: &Relation| r.iter().all(|p| s.binary_search(p).is_ok());
    let mut out: Vec<Relation> = Vec::new();
    for (i, r) in all.iter().enumerate() {
        let dominated = all.iter().enumerate().any(|(j, s)| j != i && s.len() > r.len() && subset(r, s));
        if !dominated {
            out.push(r.clone());
        }
    }
    out
}

/// Some witnessing relation if `n` is a temporal successor of `m`; the
/// first inclusion-maximal one in enumeration order.
pub fn temporal_successor(m: &Moment, n: &Moment, sigma: &SigmaSet) -> Option<Relation> {
    maximal_relations(m, n, sigma).into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::typespace::SigmaType;

    #[test]
    fn examples() {
        let s = SigmaSet::closure(&parse("X p").unwrap());
        let (p, xp) = (SigmaType(1), SigmaType(2));
        let m = Moment(vec![SigmaType(p.0 | xp.0)]);
        assert_eq!(temporal_successor(&m, &Moment(vec![p]), &s), Some(vec![(0, 0)]));
        assert_eq!(temporal_successor(&m, &Moment(vec![SigmaType(0)]), &s), None);

        let s = SigmaSet::closure(&parse("F (p -> X p)").unwrap());
        let m = Moment(vec![SigmaType(0b11111), SigmaType(0b00011), SigmaType(0b00001)]);
        let r = temporal_successor(&m, &m, &s).unwrap();
        for pair in [(2, 2), (1, 2), (0, 1), (0, 0)] {
            assert!(r.contains(&pair), "{r:?}");
        }
    }

    #[test]
    fn staircases_on_free_cells() {
        // With every cell allowed, a 1x1 grid has one relation and a 2x2
        // grid has the three staircases through the diagonal plus overlaps.
        let one = Moment(vec![SigmaType(0)]);
        assert_eq!(staircases(&one, &one, &|_, _| true).len(), 1);
        let two = Moment(vec![SigmaType(1), SigmaType(0)]);
        let all = staircases(&two, &two, &|_, _| true);
        assert!(all.contains(&vec![(0, 0), (1, 1)]));
        assert!(all.contains(&vec![(0, 0), (0, 1), (1, 1)]));
        assert!(all.contains(&vec![(0, 0), (1, 0), (1, 1)]));
        assert!(all.contains(&vec![(0, 0), (0, 1), (1, 0), (1, 1)]));
        assert_eq!(maximal(all), vec![vec![(0, 0), (0, 1), (1, 0), (1, 1)]]);
    }
}
