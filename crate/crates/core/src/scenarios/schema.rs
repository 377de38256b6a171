//! Tagged problem, cone, family and distribution specifications.
//!
//! serde's internally tagged enums buffer their content and lose the error
//! path, so each enum here is read by removing the tag and decoding the body
//! through an externally tagged twin. The inner JSON pointer travels up in the
//! error message behind [`MARK`] and is reassembled by [`split_pointer`].

use serde::de::{self, DeserializeOwned, Deserializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

const MARK: char = '\u{1}';

pub(crate) fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            // Variant names of the external twins are not part of the document.
            Segment::Enum { .. } => {}
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

/// `(pointer, message)` from a path prefix and a possibly marked message.
pub(crate) fn split_pointer(prefix: &str, message: &str) -> (String, String) {
    match message.strip_prefix(MARK).and_then(|rest| rest.split_once(MARK)) {
        Some((sub, rest)) => (format!("{prefix}{sub}"), rest.to_string()),
        None => (prefix.to_string(), message.to_string()),
    }
}

fn mark(pointer: &str, message: &str) -> String {
    format!("{MARK}{pointer}{MARK}{message}")
}

fn untag<T: DeserializeOwned>(v: Value, tag: &str) -> Result<T, String> {
    let Value::Object(mut map) = v else {
        return Err(format!("expected an object with a \"{tag}\" field"));
    };
    let name = match map.remove(tag) {
        Some(Value::String(s)) => s,
        Some(_) => return Err(mark(&format!("/{tag}"), "tag must be a string")),
        None => return Err(format!("missing field `{tag}`")),
    };
    let mut outer = serde_json::Map::new();
    outer.insert(name, Value::Object(map));
    serde_path_to_error::deserialize(Value::Object(outer)).map_err(|e| {
        let mut prefix = pointer_of(e.path());
        let msg = e.into_inner().to_string();
        if prefix.is_empty() && msg.starts_with("unknown variant") {
            prefix = format!("/{tag}");
        }
        let (p, m) = split_pointer(&prefix, &msg);
        mark(&p, &m)
    })
}

macro_rules! tagged_enum {
    (
        $(#[$meta:meta])*
        pub enum $name:ident via $twin:ident, tag = $tag:literal {
            $(
                $(#[$vmeta:meta])*
                $variant:ident { $( $(#[$fmeta:meta])* $field:ident : $fty:ty ),* $(,)? }
            ),* $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Serialize)]
        #[serde(tag = $tag, rename_all = "kebab-case")]
        pub enum $name {
            $( $(#[$vmeta])* $variant { $( $(#[$fmeta])* $field: $fty ),* } ),*
        }

        #[derive(Deserialize)]
        #[serde(rename_all = "kebab-case", deny_unknown_fields)]
        enum $twin {
            $( $variant { $( $(#[$fmeta])* $field: $fty ),* } ),*
        }

        impl From<$twin> for $name {
            fn from(t: $twin) -> Self {
                match t {
                    $( $twin::$variant { $($field),* } => $name::$variant { $($field),* } ),*
                }
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let v = Value::deserialize(d)?;
                untag::<$twin>(v, $tag).map(Into::into).map_err(de::Error::custom)
            }
        }
    };
}

tagged_enum! {
    pub enum ProblemSpec via ProblemTwin, tag = "type" {
        Builtin {
            builtin: String,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            grid: Option<usize>,
        },
        SetValued {
            grid: Vec<Vec<f64>>,
            /// `null` marks `f(x) = ∅`; otherwise the generating points of `f(x)`.
            values: Vec<Option<Vec<Vec<f64>>>>,
            cone: ConeSpec,
            family: FamilySpec,
        },
        Vector {
            s: Vec<Vec<f64>>,
            f: Vec<Vec<f64>>,
            cone: ConeSpec,
            e: Vec<f64>,
            #[serde(default)]
            convex: bool,
            #[serde(default)]
            equivalence: EquivalenceSpec,
        },
        Stochastic {
            x: RvSpec,
            y: RvSpec,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            cone: Option<ConeSpec>,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            z_grid: Option<Vec<Vec<f64>>>,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            w_grid: Option<Vec<Vec<f64>>>,
        },
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivalenceSpec {
    #[default]
    Translative,
    LinearBase,
}

tagged_enum! {
    pub enum ConeSpec via ConeTwin, tag = "kind" {
        Orthant { d: usize },
        Halfspace { normal: Vec<f64> },
        Ray { direction: Vec<f64> },
        Lexicographic {},
        Generators { generators: Vec<Vec<f64>>, dual_generators: Vec<Vec<f64>> },
    }
}

tagged_enum! {
    pub enum FamilySpec via FamilyTwin, tag = "kind" {
        Linear {
            directions: Vec<Vec<f64>>,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            base: Option<Vec<f64>>,
        },
        Translative { e: Vec<f64>, anchors: Vec<Vec<f64>> },
        OrientedDistance { anchors: Vec<Vec<f64>> },
        /// `relation[i][j]` means `ground[i] ⪯ ground[j]`; defaults to the cone order.
        Indicator {
            ground: Vec<Vec<f64>>,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            relation: Option<Vec<Vec<bool>>>,
        },
    }
}

tagged_enum! {
    pub enum RvSpec via RvTwin, tag = "dist" {
        Explicit { atoms: Vec<Vec<f64>>, probs: Vec<f64> },
        Uniform { atoms: Vec<Vec<f64>> },
        TwoPoint { a: Vec<f64>, b: Vec<f64>, p: f64 },
    }
}
