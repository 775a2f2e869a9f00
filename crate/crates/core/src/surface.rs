//! Combinatorial open-closed cobordisms.
//!
//! A cobordism is a list of connected components. Each component records its genus and
//! its boundary circles: closed incoming/outgoing circles, windows (free boundary circles
//! carrying one brane), and mixed circles that alternate between incoming/outgoing
//! intervals and brane-labeled free arcs.
//!
//! Mixed cycles are stored in the boundary orientation induced by the surface, read
//! counterclockwise with incoming intervals at the bottom and outgoing intervals at the
//! top. Under that reading an incoming interval is traversed from its left endpoint to
//! its right endpoint and an outgoing interval from right to left; those are the
//! default values of [`IntervalRef::reversed`].

use std::collections::BTreeMap;
use std::fmt;

use crate::brane::Brane;
use crate::object::GeneralObject;
use crate::permutation::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Incoming,
    Outgoing,
}

impl Side {
    /// Traversal flag of an interval on this side under the stored orientation.
    pub fn default_reversed(self) -> bool {
        matches!(self, Side::Outgoing)
    }
}

/// Occurrence of an object interval inside a mixed boundary circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalRef {
    pub side: Side,
    pub index: usize,
    /// `false`: the traversal meets the left endpoint first; `true`: the right one.
    pub reversed: bool,
}

impl IntervalRef {
    pub fn incoming(index: usize) -> Self {
        IntervalRef {
            side: Side::Incoming,
            index,
            reversed: Side::Incoming.default_reversed(),
        }
    }

    pub fn outgoing(index: usize) -> Self {
        IntervalRef {
            side: Side::Outgoing,
            index,
            reversed: Side::Outgoing.default_reversed(),
        }
    }

    pub fn flipped(self) -> Self {
        IntervalRef {
            reversed: !self.reversed,
            ..self
        }
    }

    pub fn has_default_orientation(&self) -> bool {
        self.reversed == self.side.default_reversed()
    }

    /// Endpoint branes in traversal order, looked up in the source or target object.
    pub fn met_endpoints<'a>(
        &self,
        source: &'a GeneralObject,
        target: &'a GeneralObject,
    ) -> Option<(&'a Brane, &'a Brane)> {
        let obj = match self.side {
            Side::Incoming => source,
            Side::Outgoing => target,
        };
        let (l, r) = obj.interval_at(self.index)?;
        Some(if self.reversed { (r, l) } else { (l, r) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MixedEntry {
    Interval(IntervalRef),
    Arc(Brane),
}

impl MixedEntry {
    pub fn incoming(index: usize) -> Self {
        MixedEntry::Interval(IntervalRef::incoming(index))
    }

    pub fn outgoing(index: usize) -> Self {
        MixedEntry::Interval(IntervalRef::outgoing(index))
    }

    pub fn arc(brane: impl Into<Brane>) -> Self {
        MixedEntry::Arc(brane.into())
    }

    pub fn as_interval(&self) -> Option<&IntervalRef> {
        match self {
            MixedEntry::Interval(r) => Some(r),
            MixedEntry::Arc(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryCircle {
    /// Circle entry of the source object, by position.
    InClosed(usize),
    /// Circle entry of the target object, by position.
    OutClosed(usize),
    Window(Brane),
    Mixed(Vec<MixedEntry>),
}

impl BoundaryCircle {
    pub fn window(b: impl Into<Brane>) -> Self {
        BoundaryCircle::Window(b.into())
    }

    pub fn is_window(&self) -> bool {
        matches!(self, BoundaryCircle::Window(_))
    }

    /// True when the circle contains part of the outgoing boundary.
    pub fn touches_outgoing(&self) -> bool {
        match self {
            BoundaryCircle::OutClosed(_) => true,
            BoundaryCircle::Mixed(cycle) => cycle
                .iter()
                .any(|e| matches!(e, MixedEntry::Interval(r) if r.side == Side::Outgoing)),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub genus: u32,
    pub boundary: Vec<BoundaryCircle>,
}

impl Component {
    pub fn new(genus: u32, boundary: Vec<BoundaryCircle>) -> Self {
        Component { genus, boundary }
    }

    /// `2 - 2g - b`.
    pub fn euler_char(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.boundary.len() as i64
    }

    pub fn window_count(&self) -> usize {
        self.boundary.iter().filter(|c| c.is_window()).count()
    }

    /// Boundary circles fixed pointwise by isomorphisms: every circle except windows.
    pub fn fixed_boundary_count(&self) -> usize {
        self.boundary.len() - self.window_count()
    }

    pub fn has_outgoing(&self) -> bool {
        self.boundary.iter().any(BoundaryCircle::touches_outgoing)
    }
}

/// Genus of a connected surface with Euler characteristic `chi` and `boundary` boundary
/// circles, or `None` when no such surface exists.
pub fn genus_from_euler(chi: i64, boundary: usize) -> Option<u32> {
    let twice = 2 - chi - boundary as i64;
    if twice < 0 || twice % 2 != 0 {
        return None;
    }
    u32::try_from(twice / 2).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cobordism {
    pub source: GeneralObject,
    pub target: GeneralObject,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("target must be the single circle (0), got {0}")]
    TargetNotCircle(GeneralObject),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    BraneSetMismatch,
    EmptyComponent,
    Alternation,
    UnknownBrane,
    ArcAdjacency,
    BadCircleIndex,
    DuplicateCircleUse,
    MissingCircle,
    BadIntervalIndex,
    DuplicateIntervalUse,
    MissingInterval,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::BraneSetMismatch => "brane set mismatch",
            Rule::EmptyComponent => "empty component",
            Rule::Alternation => "alternation",
            Rule::UnknownBrane => "unknown brane",
            Rule::ArcAdjacency => "arc adjacency",
            Rule::BadCircleIndex => "bad circle index",
            Rule::DuplicateCircleUse => "duplicate circle use",
            Rule::MissingCircle => "missing circle",
            Rule::BadIntervalIndex => "bad interval index",
            Rule::DuplicateIntervalUse => "duplicate interval use",
            Rule::MissingInterval => "missing interval",
        })
    }
}

/// One broken invariant. Component and circle numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub component: Option<usize>,
    pub circle: Option<usize>,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.component {
            write!(f, "component {c}")?;
            if let Some(k) = self.circle {
                write!(f, ", circle {k}")?;
            }
            f.write_str(": ")?;
        }
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

/// Per-position use counts for one side of the interface.
struct UseCounts {
    closed: BTreeMap<usize, Vec<usize>>,
    intervals: BTreeMap<usize, Vec<usize>>,
}

impl UseCounts {
    fn new() -> Self {
        UseCounts {
            closed: BTreeMap::new(),
            intervals: BTreeMap::new(),
        }
    }
}

impl Cobordism {
    pub fn new(source: GeneralObject, target: GeneralObject, components: Vec<Component>) -> Self {
        Cobordism {
            source,
            target,
            components,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Every broken invariant, in a deterministic order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let branes = self.source.branes();
        if branes != self.target.branes() {
            out.push(Violation {
                component: None,
                circle: None,
                rule: Rule::BraneSetMismatch,
                detail: format!("source uses {branes}, target uses {}", self.target.branes()),
            });
        }
        let mut incoming = UseCounts::new();
        let mut outgoing = UseCounts::new();

        for (ci, comp) in self.components.iter().enumerate() {
            let cn = ci + 1;
            let at = |k: usize, rule: Rule, detail: String| Violation {
                component: Some(cn),
                circle: Some(k),
                rule,
                detail,
            };
            if comp.boundary.is_empty() {
                out.push(Violation {
                    component: Some(cn),
                    circle: None,
                    rule: Rule::EmptyComponent,
                    detail: "closed components are not morphisms".into(),
                });
            }
            for (ki, circle) in comp.boundary.iter().enumerate() {
                let kn = ki + 1;
                match circle {
                    BoundaryCircle::InClosed(i) => {
                        if self.source.is_circle_at(*i) {
                            incoming.closed.entry(*i).or_default().push(cn);
                        } else {
                            out.push(at(
                                kn,
                                Rule::BadCircleIndex,
                                format!("source position {i} is not a circle"),
                            ));
                        }
                    }
                    BoundaryCircle::OutClosed(i) => {
                        if self.target.is_circle_at(*i) {
                            outgoing.closed.entry(*i).or_default().push(cn);
                        } else {
                            out.push(at(
                                kn,
                                Rule::BadCircleIndex,
                                format!("target position {i} is not a circle"),
                            ));
                        }
                    }
                    BoundaryCircle::Window(b) => {
                        if !branes.contains(b) {
                            out.push(at(kn, Rule::UnknownBrane, format!("window label {b}")));
                        }
                    }
                    BoundaryCircle::Mixed(cycle) => {
                        self.check_mixed(cycle, cn, kn, &mut incoming, &mut outgoing, &mut out);
                    }
                }
            }
        }

        let sides = [
            ("source", &self.source, &incoming),
            ("target", &self.target, &outgoing),
        ];
        for (name, obj, uses) in sides {
            for i in obj.circle_indices() {
                match uses.closed.get(&i).map(Vec::len).unwrap_or(0) {
                    0 => out.push(Violation {
                        component: None,
                        circle: None,
                        rule: Rule::MissingCircle,
                        detail: format!("{name} circle {i} is not used"),
                    }),
                    1 => {}
                    _ => out.push(Violation {
                        component: None,
                        circle: None,
                        rule: Rule::DuplicateCircleUse,
                        detail: format!(
                            "{name} circle {i} used in components {:?}",
                            uses.closed[&i]
                        ),
                    }),
                }
            }
            for i in obj.interval_indices() {
                match uses.intervals.get(&i).map(Vec::len).unwrap_or(0) {
                    0 => out.push(Violation {
                        component: None,
                        circle: None,
                        rule: Rule::MissingInterval,
                        detail: format!("{name} interval {i} is not used"),
                    }),
                    1 => {}
                    _ => out.push(Violation {
                        component: None,
                        circle: None,
                        rule: Rule::DuplicateIntervalUse,
                        detail: format!(
                            "{name} interval {i} used in components {:?}",
                            uses.intervals[&i]
                        ),
                    }),
                }
            }
        }
        out
    }

    fn check_mixed(
        &self,
        cycle: &[MixedEntry],
        cn: usize,
        kn: usize,
        incoming: &mut UseCounts,
        outgoing: &mut UseCounts,
        out: &mut Vec<Violation>,
    ) {
        let at = |rule: Rule, detail: String| Violation {
            component: Some(cn),
            circle: Some(kn),
            rule,
            detail,
        };
        let n = cycle.len();
        let alternates = n >= 2
            && n.is_multiple_of(2)
            && (0..n).all(|k| {
                matches!(cycle[k], MixedEntry::Interval(_))
                    != matches!(cycle[(k + 1) % n], MixedEntry::Interval(_))
            });
        if !alternates {
            out.push(at(
                Rule::Alternation,
                "mixed cycles alternate intervals and arcs with even length >= 2".into(),
            ));
        }
        let mut indices_ok = true;
        for entry in cycle {
            match entry {
                MixedEntry::Arc(b) => {
                    if !self.source.branes().contains(b) {
                        out.push(at(Rule::UnknownBrane, format!("arc label {b}")));
                    }
                }
                MixedEntry::Interval(r) => {
                    let (obj, uses, name) = match r.side {
                        Side::Incoming => (&self.source, &mut *incoming, "source"),
                        Side::Outgoing => (&self.target, &mut *outgoing, "target"),
                    };
                    if obj.interval_at(r.index).is_some() {
                        uses.intervals.entry(r.index).or_default().push(cn);
                    } else {
                        indices_ok = false;
                        out.push(at(
                            Rule::BadIntervalIndex,
                            format!("{name} position {} is not an interval", r.index),
                        ));
                    }
                }
            }
        }
        if !(alternates && indices_ok) {
            return;
        }
        for k in 0..n {
            let MixedEntry::Interval(r) = &cycle[k] else {
                continue;
            };
            let (first, second) = r
                .met_endpoints(&self.source, &self.target)
                .expect("index checked above");
            let before = &cycle[(k + n - 1) % n];
            let after = &cycle[(k + 1) % n];
            for (arc, want, which) in [(before, first, "before"), (after, second, "after")] {
                if let MixedEntry::Arc(b) = arc {
                    if b != want {
                        out.push(at(
                            Rule::ArcAdjacency,
                            format!(
                                "arc {which} {} interval {} is labeled {b}, endpoint brane is {want}",
                                side_word(r.side),
                                r.index
                            ),
                        ));
                    }
                }
            }
        }
    }

    /// Number of windows per brane, with zeros for unused branes.
    pub fn window_vector(&self) -> BTreeMap<Brane, usize> {
        let mut w: BTreeMap<Brane, usize> = self
            .source
            .branes()
            .iter()
            .map(|b| (b.clone(), 0))
            .collect();
        for comp in &self.components {
            for circle in &comp.boundary {
                if let BoundaryCircle::Window(b) = circle {
                    *w.entry(b.clone()).or_default() += 1;
                }
            }
        }
        w
    }

    pub fn euler_total(&self) -> i64 {
        self.components.iter().map(Component::euler_char).sum()
    }

    pub fn genus_total(&self) -> u32 {
        self.components.iter().map(|c| c.genus).sum()
    }

    /// Successor permutation of the incoming intervals along mixed circles. Requires the
    /// target to be the single circle `(0)`; components need not be connected to it.
    pub fn boundary_permutation(&self) -> Result<Permutation, SurfaceError> {
        if !self
            .target
            .entries()
            .iter()
            .eq([crate::object::Entry::Circle].iter())
        {
            return Err(SurfaceError::TargetNotCircle(self.target.clone()));
        }
        let mut map = BTreeMap::new();
        for comp in &self.components {
            for circle in &comp.boundary {
                let BoundaryCircle::Mixed(cycle) = circle else {
                    continue;
                };
                let idx: Vec<usize> = cycle
                    .iter()
                    .filter_map(MixedEntry::as_interval)
                    .map(|r| r.index)
                    .collect();
                for (k, &i) in idx.iter().enumerate() {
                    map.insert(i, idx[(k + 1) % idx.len()]);
                }
            }
        }
        Ok(Permutation::from_map(map).expect("valid cobordism uses each interval once"))
    }

    /// True when no component is a cobordism to the empty 1-manifold.
    pub fn in_b_subcategory(&self) -> bool {
        self.components.iter().all(Component::has_outgoing)
    }

    pub fn invariant_summary(&self) -> InvariantSummary {
        let mut components: Vec<ComponentSummary> = self
            .components
            .iter()
            .map(|c| ComponentSummary::of(c, self))
            .collect();
        components.sort();
        let mut genera: Vec<u32> = components.iter().map(|c| c.genus).collect();
        genera.sort_unstable();
        InvariantSummary {
            total_genus: genera.iter().sum(),
            genera,
            windows: self.window_vector(),
            component_count: components.len(),
            components,
        }
    }
}

fn side_word(side: Side) -> &'static str {
    match side {
        Side::Incoming => "incoming",
        Side::Outgoing => "outgoing",
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryKinds {
    pub in_closed: usize,
    pub out_closed: usize,
    pub windows: usize,
    pub mixed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentSummary {
    pub genus: u32,
    pub windows: BTreeMap<Brane, usize>,
    pub kinds: BoundaryKinds,
    pub euler: i64,
    /// Boundary circles other than windows.
    pub fixed_boundary: usize,
    pub has_outgoing: bool,
}

impl ComponentSummary {
    fn of(comp: &Component, cob: &Cobordism) -> Self {
        let mut windows: BTreeMap<Brane, usize> =
            cob.source.branes().iter().map(|b| (b.clone(), 0)).collect();
        let mut kinds = BoundaryKinds::default();
        for circle in &comp.boundary {
            match circle {
                BoundaryCircle::InClosed(_) => kinds.in_closed += 1,
                BoundaryCircle::OutClosed(_) => kinds.out_closed += 1,
                BoundaryCircle::Window(b) => {
                    kinds.windows += 1;
                    *windows.entry(b.clone()).or_default() += 1;
                }
                BoundaryCircle::Mixed(_) => kinds.mixed += 1,
            }
        }
        ComponentSummary {
            genus: comp.genus,
            windows,
            kinds,
            euler: comp.euler_char(),
            fixed_boundary: comp.fixed_boundary_count(),
            has_outgoing: comp.has_outgoing(),
        }
    }
}

/// Classification data of a cobordism, independent of list order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantSummary {
    pub components: Vec<ComponentSummary>,
    pub total_genus: u32,
    pub genera: Vec<u32>,
    pub windows: BTreeMap<Brane, usize>,
    pub component_count: usize,
}
