//! Instance and allocation files.
//!
//! Item indices in files are 1-based; table values are indexed by bitmask with
//! item `k` on bit `k − 1`. Values are JSON integers or strings `"p/q"`;
//! JSON floats are rejected.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use fairdiv_core::utility::{Representation, MAX_TABLE_ITEMS};
use fairdiv_core::{Allocation, Error, Instance, ItemSet, Rational, RationalInstance, UtilityFunction};
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// A rational as it appears in files.
#[derive(Debug, Clone, PartialEq)]
pub struct Value(pub Rational);

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(v) = self.0.numer().to_i64() {
                return s.serialize_i64(v);
            }
        }
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Value;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Value, E> {
                Ok(Value(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Value, E> {
                Ok(Value(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Value, E> {
                Err(E::custom(format!("floating-point value {v} is not allowed, write it as a string \"p/q\"")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Value, E> {
                parse_rational(v).map(Value).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if let Some((_, q)) = t.split_once('/') {
        if q.trim().trim_start_matches('+').chars().all(|c| c == '0') {
            return Err(format!("'{s}' has a zero denominator"));
        }
    }
    Rational::from_str(t).map_err(|_| format!("'{s}' is not a rational number"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Items {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawUtility", into = "RawUtility")]
pub enum UtilitySpec {
    Table { values: Vec<Value> },
    Additive { values: Vec<Value> },
    Threshold { value: Value, min_size: usize },
    Superset { value: Value, of: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum UtilityType {
    Table,
    Additive,
    Threshold,
    Superset,
}

/// Flat wire form, so that field paths in diagnostics reach inside values.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUtility {
    #[serde(rename = "type")]
    kind: UtilityType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    min_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    of: Option<Vec<usize>>,
}

impl TryFrom<RawUtility> for UtilitySpec {
    type Error = String;

    fn try_from(raw: RawUtility) -> Result<Self, String> {
        let name = match raw.kind {
            UtilityType::Table => "table",
            UtilityType::Additive => "additive",
            UtilityType::Threshold => "threshold",
            UtilityType::Superset => "superset",
        };
        let missing = |field: &str| format!("a {name} utility needs '{field}'");
        let extra = [
            ("values", raw.values.is_some()),
            ("value", raw.value.is_some()),
            ("min_size", raw.min_size.is_some()),
            ("of", raw.of.is_some()),
        ];
        let allowed: &[&str] = match raw.kind {
            UtilityType::Table | UtilityType::Additive => &["values"],
            UtilityType::Threshold => &["value", "min_size"],
            UtilityType::Superset => &["value", "of"],
        };
        if let Some((field, _)) = extra.iter().find(|(f, present)| *present && !allowed.contains(f)) {
            return Err(format!("'{field}' does not apply to a {name} utility"));
        }
        Ok(match raw.kind {
            UtilityType::Table => UtilitySpec::Table { values: raw.values.ok_or_else(|| missing("values"))? },
            UtilityType::Additive => UtilitySpec::Additive { values: raw.values.ok_or_else(|| missing("values"))? },
            UtilityType::Threshold => UtilitySpec::Threshold {
                value: raw.value.ok_or_else(|| missing("value"))?,
                min_size: raw.min_size.ok_or_else(|| missing("min_size"))?,
            },
            UtilityType::Superset => UtilitySpec::Superset {
                value: raw.value.ok_or_else(|| missing("value"))?,
                of: raw.of.ok_or_else(|| missing("of"))?,
            },
        })
    }
}

impl From<UtilitySpec> for RawUtility {
    fn from(u: UtilitySpec) -> Self {
        let blank = |kind| RawUtility { kind, values: None, value: None, min_size: None, of: None };
        match u {
            UtilitySpec::Table { values } => RawUtility { values: Some(values), ..blank(UtilityType::Table) },
            UtilitySpec::Additive { values } => RawUtility { values: Some(values), ..blank(UtilityType::Additive) },
            UtilitySpec::Threshold { value, min_size } => {
                RawUtility { value: Some(value), min_size: Some(min_size), ..blank(UtilityType::Threshold) }
            }
            UtilitySpec::Superset { value, of } => {
                RawUtility { value: Some(value), of: Some(of), ..blank(UtilityType::Superset) }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub agents: usize,
    pub items: Items,
    #[serde(default)]
    pub identical: bool,
    pub utilities: Vec<UtilitySpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationFile {
    pub bundles: Vec<Vec<usize>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let at = if path == "." { String::new() } else { format!("field '{path}': ") };
        CliError::input(origin, format!("{at}{inner}"))
    })?;
    de.end().map_err(|e| CliError::input(origin, e.to_string()))?;
    Ok(value)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(path.display(), e.to_string()))
}

impl InstanceFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        parse_json(text, origin)
    }

    pub fn items(&self) -> usize {
        match &self.items {
            Items::Count(m) => *m,
            Items::Labels(l) => l.len(),
        }
    }

    pub fn to_instance(&self, origin: &str) -> Result<RationalInstance, CliError> {
        let bad = |msg: String| CliError::input(origin, msg);
        let m = self.items();
        if self.agents == 0 {
            return Err(bad("field 'agents': at least one agent is required".into()));
        }
        let expected = if self.identical { 1 } else { self.agents };
        if self.utilities.len() != expected {
            return Err(bad(format!(
                "field 'utilities': expected {expected} utility function(s) for {} agent(s){}, found {}",
                self.agents,
                if self.identical { " with identical = true" } else { "" },
                self.utilities.len()
            )));
        }
        let utilities = self
            .utilities
            .iter()
            .enumerate()
            .map(|(k, spec)| {
                to_utility(spec, m).map_err(|e| match e {
                    CliError::Core(Error::TableCap(_)) => e,
                    other => bad(format!("field 'utilities[{k}]': {}", other.message())),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let inst = if self.identical {
            Instance::identical(self.agents, utilities.into_iter().next().expect("one utility"))?
        } else {
            Instance::new(utilities)?
        };
        match &self.items {
            Items::Labels(labels) => Ok(inst.with_labels(labels.clone())?),
            Items::Count(_) => Ok(inst),
        }
    }

    pub fn from_instance(inst: &RationalInstance) -> Self {
        let items = match inst.labels() {
            Some(l) => Items::Labels(l.to_vec()),
            None => Items::Count(inst.items()),
        };
        let identical = inst.agents() > 1 && inst.flags().identical;
        let utilities = if identical {
            vec![from_utility(inst.utility(0))]
        } else {
            inst.utilities().iter().map(from_utility).collect()
        };
        InstanceFile { agents: inst.agents(), items, identical, utilities }
    }

    /// One field per line, one utility per line.
    pub fn to_json(&self) -> String {
        let utilities: Vec<String> = self.utilities.iter().map(|u| format!("    {}", compact(u))).collect();
        format!(
            "{{\n  \"agents\": {},\n  \"items\": {},\n  \"identical\": {},\n  \"utilities\": [\n{}\n  ]\n}}\n",
            self.agents,
            compact(&self.items),
            self.identical,
            utilities.join(",\n")
        )
    }
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("file values serialize")
}

fn to_utility(spec: &UtilitySpec, m: usize) -> Result<UtilityFunction<Rational>, CliError> {
    let rationals = |vals: &[Value]| vals.iter().map(|v| v.0.clone()).collect::<Vec<_>>();
    let u = match spec {
        UtilitySpec::Table { values } => {
            if m > MAX_TABLE_ITEMS {
                return Err(Error::TableCap(m).into());
            }
            if values.len() != 1usize << m {
                return Err(CliError::Usage(format!(
                    "a table over {m} items needs {} values, found {}",
                    1usize << m,
                    values.len()
                )));
            }
            if values.first().is_some_and(|v| v.0 != Rational::from_integer(0.into())) {
                return Err(CliError::Usage(format!(
                    "values[0] is {}, but utilities are normalized so that the empty set has value 0",
                    values[0].0
                )));
            }
            UtilityFunction::table(m, rationals(values))?
        }
        UtilitySpec::Additive { values } => {
            if values.len() != m {
                return Err(CliError::Usage(format!("additive utility lists {} values for {m} items", values.len())));
            }
            UtilityFunction::additive(rationals(values))?
        }
        UtilitySpec::Threshold { value, min_size } => UtilityFunction::threshold(m, value.0.clone(), *min_size)?,
        UtilitySpec::Superset { value, of } => {
            let set = one_based_set(of, m).map_err(|e| CliError::Usage(format!("field 'of': {e}")))?;
            UtilityFunction::superset(m, value.0.clone(), set)?
        }
    };
    Ok(u)
}

fn from_utility(u: &UtilityFunction<Rational>) -> UtilitySpec {
    let values = |v: &[Rational]| v.iter().cloned().map(Value).collect();
    match u.representation() {
        Representation::Table(v) => UtilitySpec::Table { values: values(v) },
        Representation::Additive(v) => UtilitySpec::Additive { values: values(v) },
        Representation::Threshold { value, min_size } => {
            UtilitySpec::Threshold { value: Value(value.clone()), min_size: *min_size }
        }
        Representation::Superset { value, of } => {
            UtilitySpec::Superset { value: Value(value.clone()), of: of.iter().map(|s| s + 1).collect() }
        }
    }
}

/// 1-based item list to a set, rejecting 0, out-of-range and repeated items.
pub fn one_based_set(items: &[usize], m: usize) -> Result<ItemSet, String> {
    let mut set = ItemSet::EMPTY;
    for &k in items {
        if k == 0 || k > m {
            return Err(format!("item {k} is outside 1..{m}"));
        }
        if set.contains(k - 1) {
            return Err(format!("item {k} is listed twice"));
        }
        set = set.with(k - 1);
    }
    Ok(set)
}

pub fn one_based_items(set: ItemSet) -> Vec<usize> {
    set.iter().map(|s| s + 1).collect()
}

impl AllocationFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        parse_json(text, origin)
    }

    pub fn to_allocation(&self, inst: &RationalInstance, origin: &str) -> Result<Allocation, CliError> {
        let m = inst.items();
        let bad = |msg: String| CliError::input(origin, msg);
        let bundles = self
            .bundles
            .iter()
            .enumerate()
            .map(|(i, b)| one_based_set(b, m).map_err(|e| bad(format!("field 'bundles[{i}]': {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Allocation::for_instance(bundles, inst).map_err(|e| bad(CliError::from(e).message()))
    }

    pub fn from_allocation(a: &Allocation) -> Self {
        AllocationFile { bundles: a.bundles().iter().map(|b| one_based_items(*b)).collect() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("allocation files serialize");
        s.push('\n');
        s
    }
}

pub fn load_instance(path: &Path) -> Result<RationalInstance, CliError> {
    let origin = path.display().to_string();
    InstanceFile::parse(&read(path)?, &origin)?.to_instance(&origin)
}

pub fn load_allocation(path: &Path, inst: &RationalInstance) -> Result<Allocation, CliError> {
    let origin = path.display().to_string();
    AllocationFile::parse(&read(path)?, &origin)?.to_allocation(inst, &origin)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::input(path.display(), format!("cannot write: {e}")))
}
