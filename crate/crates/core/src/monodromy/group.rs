use std::fmt;

use super::word::{parse_word, Word};
use super::MonodromyError;
use crate::lattice_params::weights_from_spec;
use crate::{DivisorId, ExtOrder, LatticeSpec};

pub const FIBER_NAMES: [&str; 4] = ["a1", "a2", "a3", "a4"];
pub const TORUS_NAMES: [&str; 5] = ["a1", "a2", "a3", "a4", "t"];
pub const TWIST_NAMES: [&str; 3] = ["s1", "s2", "s3"];

/// Exceptional divisors carrying the cone points `a1..a4`.
pub const CONE_POINTS: [DivisorId; 4] =
    [DivisorId::E1, DivisorId::E2, DivisorId::E3, DivisorId::E0];

/// `⟨a1..a4 | a_i^{m_i}, a1a2a3a4⟩`, the relation `a_i^{m_i}` dropped when `m_i = ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldGroup {
    orders: [ExtOrder; 4],
}

impl OrbifoldGroup {
    pub fn new(orders: [ExtOrder; 4]) -> Result<Self, MonodromyError> {
        for (i, m) in orders.iter().enumerate() {
            if !(m.is_infinite() || m.is_positive_integer()) {
                return Err(MonodromyError::InvalidOrder {
                    generator: i + 1,
                    order: *m,
                });
            }
        }
        Ok(OrbifoldGroup { orders })
    }

    pub fn orders(&self) -> [ExtOrder; 4] {
        self.orders
    }

    pub fn product() -> Word {
        Word::from_letters([1, 2, 3, 4])
    }

    /// Power relators followed by the product relator.
    pub fn relators(&self) -> Vec<Word> {
        let mut r: Vec<Word> = (0..4)
            .filter_map(|i| {
                self.orders[i]
                    .as_integer()
                    .map(|m| Word::gen(i as u8 + 1).pow(m))
            })
            .collect();
        r.push(Self::product());
        r
    }
}

impl fmt::Display for OrbifoldGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<a1, a2, a3, a4 | ")?;
        let rels: Vec<String> = self
            .relators()
            .iter()
            .map(|r| r.display(&FIBER_NAMES).to_string())
            .collect();
        write!(f, "{}>", rels.join(", "))
    }
}

/// Cone orders of the fibre at `(E1, E2, E3, E0)`.
pub fn fiber_orbifold_group(spec: &LatticeSpec) -> Result<OrbifoldGroup, MonodromyError> {
    let w = weights_from_spec(spec);
    let orders = CONE_POINTS.map(|d| w.branched(d));
    for (d, m) in CONE_POINTS.iter().zip(&orders) {
        if m.is_negative() {
            return Err(MonodromyError::CollapsedFiberPoint {
                divisor: *d,
                order: *m,
            });
        }
    }
    OrbifoldGroup::new(orders)
}

/// An automorphism of the free group on `a1..a4`, by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingClass {
    images: [Word; 4],
}

impl MappingClass {
    pub fn new(images: [Word; 4]) -> Self {
        MappingClass { images }
    }

    pub fn identity() -> Self {
        MappingClass {
            images: std::array::from_fn(|i| Word::gen(i as u8 + 1)),
        }
    }

    /// Half twist `σ_i`: `a_i ↦ a_i a_{i+1} a_i⁻¹`, `a_{i+1} ↦ a_i`, `i = 1, 2, 3`.
    pub fn half_twist(i: u8) -> Self {
        assert!((1..=3).contains(&i), "half twists are s1, s2, s3");
        let mut mc = Self::identity();
        let (a, b) = (Word::gen(i), Word::gen(i + 1));
        mc.images[i as usize - 1] = b.conjugate_by(&a);
        mc.images[i as usize] = a;
        mc
    }

    /// `σ_i⁻¹`: `a_i ↦ a_{i+1}`, `a_{i+1} ↦ a_{i+1}⁻¹ a_i a_{i+1}`.
    pub fn half_twist_inverse(i: u8) -> Self {
        assert!((1..=3).contains(&i), "half twists are s1, s2, s3");
        let mut mc = Self::identity();
        let (a, b) = (Word::gen(i), Word::gen(i + 1));
        mc.images[i as usize - 1] = b.clone();
        mc.images[i as usize] = a.conjugate_by(&b.inverse());
        mc
    }

    /// The class of a word in `s1, s2, s3`; `s1 s2` acts as `s1 ∘ s2`.
    pub fn from_twists(w: &Word) -> Self {
        w.letters().iter().fold(Self::identity(), |acc, &l| {
            let i = l.unsigned_abs();
            let step = if l > 0 {
                Self::half_twist(i)
            } else {
                Self::half_twist_inverse(i)
            };
            acc.compose(&step)
        })
    }

    pub fn parse(text: &str) -> Result<Self, MonodromyError> {
        let text = text.trim();
        if text.is_empty() || text == "1" || text.eq_ignore_ascii_case("id") {
            return Ok(Self::identity());
        }
        Ok(Self::from_twists(&parse_word(
            &text.replace(',', " "),
            &TWIST_NAMES,
        )?))
    }

    pub fn images(&self) -> &[Word; 4] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MappingClass) -> MappingClass {
        MappingClass {
            images: other.images.clone().map(|w| self.apply(&w)),
        }
    }

    /// Each `a_i` goes to a conjugate of some `a_j` with `m_j = m_i`, and the
    /// product relator to a conjugate of itself. For finite orders this is
    /// the same as `a_i^{m_i}` going to a conjugate of `a_j^{m_j}`.
    pub fn validate(&self, group: &OrbifoldGroup) -> Result<(), MonodromyError> {
        let m = group.orders();
        for i in 0..4 {
            let ok = (0..4)
                .any(|j| m[j] == m[i] && self.images[i].is_conjugate(&Word::gen(j as u8 + 1)));
            if !ok {
                return Err(MonodromyError::InvalidMappingClass(format!(
                    "a{} maps to {}, not a conjugate of a cone generator of order {}",
                    i + 1,
                    self.images[i].display(&FIBER_NAMES),
                    m[i]
                )));
            }
        }
        let p = OrbifoldGroup::product();
        if !self.apply(&p).is_conjugate(&p) {
            return Err(MonodromyError::InvalidMappingClass(
                "product relator not preserved".into(),
            ));
        }
        Ok(())
    }

    /// Images of all relators are conjugates of relators.
    pub fn preserves_relators(&self, group: &OrbifoldGroup) -> bool {
        let rels = group.relators();
        rels.iter().all(|r| {
            let img = self.apply(r);
            rels.iter().any(|s| img.is_conjugate(s))
        })
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "a{} -> {}", i + 1, w.display(&FIBER_NAMES))?;
        }
        Ok(())
    }
}

/// Default monodromy of the loops around the marked points `[1:0]`, `[0:1]`,
/// `[1:1]`: the standard half twists. Configuration data, not derived.
pub fn default_loop_monodromy() -> [(&'static str, MappingClass); 3] {
    [
        ("[1:0]", MappingClass::half_twist(1)),
        ("[0:1]", MappingClass::half_twist(2)),
        ("[1:1]", MappingClass::half_twist(3)),
    ]
}

/// `⟨a1..a4, t | relators of the fibre, t a_i t⁻¹ = φ(a_i)⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTorus {
    base: OrbifoldGroup,
    monodromy: MappingClass,
}

pub const T: u8 = 5;

impl MappingTorus {
    pub fn base(&self) -> &OrbifoldGroup {
        &self.base
    }

    pub fn monodromy(&self) -> &MappingClass {
        &self.monodromy
    }

    pub fn generator_count(&self) -> usize {
        5
    }

    /// `(t a_i t⁻¹, φ(a_i))` for `i = 1..4`.
    pub fn conjugation_relations(&self) -> Vec<(Word, Word)> {
        let t = Word::gen(T);
        (0..4)
            .map(|i| {
                (
                    Word::gen(i as u8 + 1).conjugate_by(&t),
                    self.monodromy.images[i].clone(),
                )
            })
            .collect()
    }

    /// All relators, each as a word equal to 1.
    pub fn relators(&self) -> Vec<Word> {
        let mut r = self.base.relators();
        r.extend(
            self.conjugation_relations()
                .into_iter()
                .map(|(l, rhs)| l.mul(&rhs.inverse())),
        );
        r
    }
}

impl fmt::Display for MappingTorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rels: Vec<String> = self
            .base
            .relators()
            .iter()
            .map(|r| r.display(&TORUS_NAMES).to_string())
            .collect();
        for (l, r) in self.conjugation_relations() {
            rels.push(format!(
                "{} = {}",
                l.display(&TORUS_NAMES),
                r.display(&TORUS_NAMES)
            ));
        }
        write!(f, "<a1, a2, a3, a4, t | {}>", rels.join(", "))
    }
}

pub fn mapping_torus(
    group: &OrbifoldGroup,
    mc: &MappingClass,
) -> Result<MappingTorus, MonodromyError> {
    mc.validate(group)?;
    Ok(MappingTorus {
        base: group.clone(),
        monodromy: mc.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fives() -> OrbifoldGroup {
        OrbifoldGroup::new([ExtOrder::int(5); 4]).unwrap()
    }

    #[test]
    fn fiber_groups() {
        assert_eq!(
            fiber_orbifold_group(&LatticeSpec::three(10, 5))
                .unwrap()
                .orders(),
            [ExtOrder::int(5); 4]
        );
        assert_eq!(
            fiber_orbifold_group(&LatticeSpec::three(6, 3))
                .unwrap()
                .orders(),
            [ExtOrder::Infinite; 4]
        );
        assert_eq!(
            fiber_orbifold_group(&LatticeSpec::three(6, 3))
                .unwrap()
                .relators()
                .len(),
            1
        );
        assert!(matches!(
            fiber_orbifold_group(&LatticeSpec::three(4, 8)),
            Err(MonodromyError::CollapsedFiberPoint {
                divisor: DivisorId::E0,
                ..
            })
        ));
    }

    #[test]
    fn twist_images() {
        let s1 = MappingClass::half_twist(1);
        assert_eq!(s1.apply(&Word::gen(1)), Word::from_letters([1, 2, -1]));
        assert_eq!(
            MappingClass::identity().apply(&Word::from_letters([1, 2])),
            Word::from_letters([1, 2])
        );
        for i in 1..=3 {
            let id = MappingClass::half_twist(i).compose(&MappingClass::half_twist_inverse(i));
            assert_eq!(id, MappingClass::identity());
            assert_eq!(
                MappingClass::identity().compose(&MappingClass::half_twist(i)),
                MappingClass::half_twist(i)
            );
        }
    }

    #[test]
    fn braid_relations() {
        let s = |i| MappingClass::half_twist(i);
        assert_eq!(
            s(1).compose(&s(2)).compose(&s(1)),
            s(2).compose(&s(1)).compose(&s(2))
        );
        assert_eq!(s(1).compose(&s(3)), s(3).compose(&s(1)));
    }

    #[test]
    fn parse_twist_words() {
        let mc = MappingClass::parse("s1, s2^-1").unwrap();
        let expect = MappingClass::half_twist(1).compose(&MappingClass::half_twist_inverse(2));
        assert_eq!(mc, expect);
        assert_eq!(MappingClass::parse("").unwrap(), MappingClass::identity());
        assert!(MappingClass::parse("s4").is_err());
    }

    #[test]
    fn tori() {
        let id = mapping_torus(&fives(), &MappingClass::identity()).unwrap();
        assert_eq!(id.generator_count(), 5);
        assert_eq!(id.relators().len(), 4 + 1 + 4);
        for (l, r) in id.conjugation_relations() {
            assert!(l.is_conjugate(&r));
        }
        let s1 = mapping_torus(&fives(), &MappingClass::half_twist(1)).unwrap();
        let (l, r) = &s1.conjugation_relations()[0];
        assert_eq!(l, &Word::from_letters([5, 1, -5]));
        assert_eq!(r, &Word::from_letters([1, 2, -1]));
        assert!(s1.to_string().contains("t a1 t^-1 = a1 a2 a1^-1"));
    }

    #[test]
    fn twist_swapping_unequal_orders_is_invalid() {
        let g = OrbifoldGroup::new([
            ExtOrder::int(2),
            ExtOrder::int(3),
            ExtOrder::int(3),
            ExtOrder::int(3),
        ])
        .unwrap();
        assert!(mapping_torus(&g, &MappingClass::half_twist(2)).is_ok());
        assert!(matches!(
            mapping_torus(&g, &MappingClass::half_twist(1)),
            Err(MonodromyError::InvalidMappingClass(_))
        ));
        let bogus = MappingClass::new([Word::gen(1), Word::gen(1), Word::gen(3), Word::gen(4)]);
        assert!(bogus.validate(&fives()).is_err());
        assert!(!bogus.preserves_relators(&fives()));
    }
}
