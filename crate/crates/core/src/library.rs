//! Built-in models, addressed by name. Parametric families take their
//! parameters after a colon: `sphere:5`, `cp:3`, `cpl-sphere:4,1`.

use thiserror::Error;

use crate::parse::parse_model;
use crate::model::SullivanModel;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LibraryError {
    #[error("unknown library model `{0}`")]
    Unknown(String),
    #[error("bad parameters for `{family}`: {message}")]
    BadParameters { family: String, message: String },
}

/// Whether the differential is homogeneous in word length, as advertised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Homogeneous,
    Mixed,
}

/// A library entry: a concrete name and the model text it expands to.
#[derive(Clone, Debug)]
pub struct LibraryModel {
    pub name: String,
    pub description: String,
    pub shape: Shape,
    pub text: String,
}

impl LibraryModel {
    pub fn model(&self) -> SullivanModel {
        parse_model(&self.text).expect("library models are valid")
    }
}

/// `Λ(u)` for odd n, `Λ(x, y)` with `dy = x²` for even n.
pub fn sphere_text(n: u32) -> String {
    if n == 1 {
        "option non-simply-connected\ngen u 1\n".to_string()
    } else if n % 2 == 1 {
        format!("gen u {n}\n")
    } else {
        format!("gen x {n}\ngen y {}\nd y = x^2\n", 2 * n - 1)
    }
}

/// `Λ(x:2, y:2n+1)`, `dy = x^{n+1}`.
pub fn cp_text(n: u32) -> String {
    format!("gen x 2\ngen y {}\nd y = x^{}\n", 2 * n + 1, n + 1)
}

/// The product of `CP^{l−1}` and `S^{2r+1}`: `Λ(x:2, y:2l−1, u:2r+1)`, `dy = x^l`.
pub fn cpl_sphere_text(l: u32, r: u32) -> String {
    format!("gen x 2\ngen y {}\ngen u {}\nd y = x^{l}\n", 2 * l - 1, 2 * r + 1)
}

const EXAMPLE_FIVE: &str = "\
gen x1 2
gen x2 2
gen y1 3
gen y2 3
gen y3 3
d y1 = x1^2
d y2 = x1*x2
d y3 = x2^2
";

const HEISENBERG: &str = "\
option non-simply-connected
gen a 1
gen b 1
gen c 1
d c = a*b
";

const HEISENBERG5: &str = "\
option non-simply-connected
gen a1 1
gen b1 1
gen a2 1
gen b2 1
gen c 1
d c = a1*b1 + a2*b2
";

const NIL5: &str = "\
option non-simply-connected
gen a 1
gen b 1
gen c 1
gen d 1
gen e 1
d c = a*b
d d = a*c
d e = a*d + b*c
";

const NIL4: &str = "\
option non-simply-connected
gen a 1
gen b 1
gen c 1
gen d 1
d c = a*b
d d = a*c
";

const MIXED: [(&str, &str); 5] = [
    (
        "mixed-1",
        "gen x 2\ngen z 4\ngen y 5\ngen w 7\nd y = x^3 + x*z\nd w = z^2\n",
    ),
    (
        "mixed-2",
        "gen x1 2\ngen x2 2\ngen y1 3\ngen y2 5\nd y1 = x1^2\nd y2 = x2^3\n",
    ),
    (
        "mixed-3",
        "gen x 2\ngen z 4\ngen w 5\ngen y 7\nd w = x*z\nd y = x^4 + z^2\n",
    ),
    (
        "mixed-4",
        "gen x 2\ngen z 4\ngen y 7\ngen w 11\nd y = x^4 + x^2*z\nd w = z^3 + x^4*z\n",
    ),
    (
        "mixed-5",
        "gen x 2\ngen y 3\ngen z 4\ngen w 7\nd y = x^2\nd w = z^2 + x^2*z\n",
    ),
];

/// The five-generator coformal model with `dy1 = x1², dy2 = x1x2, dy3 = x2²`.
pub fn example_five_generator() -> SullivanModel {
    parse_model(EXAMPLE_FIVE).expect("valid")
}

pub fn heisenberg() -> SullivanModel {
    parse_model(HEISENBERG).expect("valid")
}

fn entry(name: impl Into<String>, description: impl Into<String>, shape: Shape, text: impl Into<String>) -> LibraryModel {
    LibraryModel {
        name: name.into(),
        description: description.into(),
        shape,
        text: text.into(),
    }
}

/// The listed library: fixed members plus a few instances of each family.
pub fn library() -> Vec<LibraryModel> {
    let mut out = Vec::new();
    for n in [1, 2, 3, 4, 5, 6, 7] {
        out.push(lookup_entry(&format!("sphere:{n}")).expect("family"));
    }
    for n in 1..=6 {
        out.push(lookup_entry(&format!("cp:{n}")).expect("family"));
    }
    for (l, r) in [(2, 1), (3, 1), (4, 1), (3, 2)] {
        out.push(lookup_entry(&format!("cpl-sphere:{l},{r}")).expect("family"));
    }
    for name in ["example-5gen", "heisenberg", "nil4", "nil5", "heisenberg5"] {
        out.push(lookup_entry(name).expect("fixed"));
    }
    for (name, _) in MIXED {
        out.push(lookup_entry(name).expect("fixed"));
    }
    out
}

fn parse_params(family: &str, params: &str, count: usize) -> Result<Vec<u32>, LibraryError> {
    let bad = |message: String| LibraryError::BadParameters {
        family: family.to_string(),
        message,
    };
    let values = params
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| bad(format!("`{p}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != count {
        return Err(bad(format!("expected {count} parameter(s), got {}", values.len())));
    }
    Ok(values)
}

/// Resolve a name (possibly parametric) to its entry.
pub fn lookup_entry(name: &str) -> Result<LibraryModel, LibraryError> {
    let (family, params) = match name.split_once(':') {
        Some((f, p)) => (f, Some(p)),
        None => (name, None),
    };
    let bad = |message: &str| LibraryError::BadParameters {
        family: family.to_string(),
        message: message.to_string(),
    };
    match (family, params) {
        ("sphere", Some(p)) => {
            let n = parse_params(family, p, 1)?[0];
            if n == 0 {
                return Err(bad("dimension must be positive"));
            }
            Ok(entry(name, format!("{n}-sphere"), Shape::Homogeneous, sphere_text(n)))
        }
        ("cp", Some(p)) => {
            let n = parse_params(family, p, 1)?[0];
            if n == 0 {
                return Err(bad("n must be at least 1"));
            }
            Ok(entry(name, format!("complex projective {n}-space"), Shape::Homogeneous, cp_text(n)))
        }
        ("cpl-sphere", Some(p)) => {
            let v = parse_params(family, p, 2)?;
            let (l, r) = (v[0], v[1]);
            if l < 2 || r < 1 {
                return Err(bad("need l ≥ 2 and r ≥ 1"));
            }
            Ok(entry(
                name,
                format!("CP^{} × S^{}", l - 1, 2 * r + 1),
                Shape::Homogeneous,
                cpl_sphere_text(l, r),
            ))
        }
        ("example-5gen", None) => Ok(entry(
            name,
            "coformal model on two degree-2 and three degree-3 generators",
            Shape::Homogeneous,
            EXAMPLE_FIVE,
        )),
        ("heisenberg", None) => Ok(entry(name, "3-dimensional Heisenberg nilmanifold", Shape::Homogeneous, HEISENBERG)),
        ("heisenberg5", None) => Ok(entry(name, "5-dimensional Heisenberg nilmanifold", Shape::Homogeneous, HEISENBERG5)),
        ("nil4", None) => Ok(entry(name, "4-dimensional filiform nilmanifold", Shape::Homogeneous, NIL4)),
        ("nil5", None) => Ok(entry(name, "5-dimensional filiform nilmanifold", Shape::Homogeneous, NIL5)),
        (f, None) => MIXED
            .iter()
            .find(|(n, _)| *n == f)
            .map(|(n, text)| entry(*n, "pure model with mixed word lengths", Shape::Mixed, *text))
            .ok_or_else(|| LibraryError::Unknown(name.to_string())),
        _ => Err(LibraryError::Unknown(name.to_string())),
    }
}

/// Resolve a name to a validated model.
pub fn lookup(name: &str) -> Result<SullivanModel, LibraryError> {
    lookup_entry(name).map(|e| e.model())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LengthProfile;
    use crate::parse::print_model;

    #[test]
    fn every_member_validates_and_round_trips() {
        for entry in library() {
            let model = entry.model();
            let again = parse_model(&print_model(&model)).unwrap();
            assert_eq!(again, model, "{}", entry.name);
            let homogeneous = model.length_profile().is_homogeneous_or_zero();
            assert_eq!(homogeneous, entry.shape == Shape::Homogeneous, "{}", entry.name);
        }
    }

    #[test]
    fn cp3() {
        let m = lookup("cp:3").unwrap();
        assert_eq!(m.generators()[1].degree, 7);
        assert_eq!(m.algebra().display(m.d_generator(1)), "x^4");
    }

    #[test]
    fn mixed_members_are_bounded_below() {
        for (name, _) in MIXED {
            assert!(matches!(lookup(name).unwrap().length_profile(), LengthProfile::BoundedBelow(_)), "{name}");
        }
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(lookup("torus"), Err(LibraryError::Unknown(_))));
        assert!(matches!(lookup("cp:x"), Err(LibraryError::BadParameters { .. })));
        assert!(matches!(lookup("cpl-sphere:1,1"), Err(LibraryError::BadParameters { .. })));
    }
}
