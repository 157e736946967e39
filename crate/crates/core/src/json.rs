//! JSON formats for bases, scalars, elements, forms and lattice sections.
//!
//! Exact scalars are written as `{"re": "num/den", "im": "num/den"}`, float
//! scalars as `{"re": 0.5, "im": 0.0}`. On input a scalar may also be a
//! plain string such as `"-1/2"` or `"3 - i/2"`, or a JSON number. Errors
//! carry the JSON path of the offending value.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::basis::{GeneratorBasis, Parity};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::forms::{presets, BilinearForm};
use crate::lattice::{LatticeSection, LatticeSpacetime};
use crate::scalar::{format_rational, parse_rational, Backend, Coeff};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(path, format!("missing field `{key}`")))
}

/// Reads `"scalar": "exact" | "float"`, defaulting to exact.
pub fn backend_of(v: &Value, path: &str) -> Result<Backend> {
    match v.get("scalar") {
        None => Ok(Backend::Exact),
        Some(Value::String(s)) if s == "exact" => Ok(Backend::Exact),
        Some(Value::String(s)) if s == "float" => Ok(Backend::Float),
        Some(other) => Err(err(&format!("{path}.scalar"), format!("expected \"exact\" or \"float\", got {other}"))),
    }
}

pub fn basis_to_json(basis: &GeneratorBasis) -> Value {
    Value::Array(
        (0..basis.dim())
            .map(|i| {
                let mut m = Map::new();
                m.insert("name".into(), json!(basis.name(i)));
                m.insert("parity".into(), json!(basis.parity(i).name()));
                let j = basis.conjugate_index(i);
                if j != i {
                    m.insert("conjugate".into(), json!(basis.name(j)));
                }
                Value::Object(m)
            })
            .collect(),
    )
}

/// A list of `{"name", "parity", "conjugate"?}` objects, or of names for
/// even generators.
pub fn basis_from_json(v: &Value, path: &str) -> Result<Arc<GeneratorBasis>> {
    let items = v.as_array().ok_or_else(|| err(path, "expected an array of generators"))?;
    let mut gens = Vec::new();
    let mut pairs = Vec::new();
    for (k, item) in items.iter().enumerate() {
        let p = format!("{path}[{k}]");
        match item {
            Value::String(name) => gens.push((name.clone(), Parity::Even)),
            Value::Object(_) => {
                let name = field(item, "name", &p)?
                    .as_str()
                    .ok_or_else(|| err(&format!("{p}.name"), "expected a string"))?;
                let parity = match item.get("parity").and_then(Value::as_str) {
                    None | Some("even") => Parity::Even,
                    Some("odd") => Parity::Odd,
                    Some(other) => return Err(err(&format!("{p}.parity"), format!("expected even or odd, got `{other}`"))),
                };
                if let Some(c) = item.get("conjugate") {
                    let c = c.as_str().ok_or_else(|| err(&format!("{p}.conjugate"), "expected a string"))?;
                    if name < c {
                        pairs.push((name.to_string(), c.to_string()));
                    }
                }
                gens.push((name.to_string(), parity));
            }
            _ => return Err(err(&p, "expected a name or a generator object")),
        }
    }
    let basis = GeneratorBasis::new(gens).map_err(|e| err(path, e))?;
    if pairs.is_empty() {
        return Ok(basis);
    }
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    basis.with_conjugate_pairs(&refs).map_err(|e| err(path, e))
}

pub fn scalar_to_json<S: Coeff>(c: &S) -> Value {
    match c.rational_parts() {
        Some((re, im)) => json!({"re": format_rational(&re), "im": format_rational(&im)}),
        None => {
            let z = c.to_c64();
            json!({"re": z.re, "im": z.im})
        }
    }
}

fn scalar_basis() -> &'static Arc<GeneratorBasis> {
    static BASIS: OnceLock<Arc<GeneratorBasis>> = OnceLock::new();
    BASIS.get_or_init(|| GeneratorBasis::even(&["__scalar"]).unwrap())
}

/// Parses a constant expression such as `-3/4`, `0.25` or `1 + i/2`.
pub fn scalar_from_str<S: Coeff>(s: &str, path: &str) -> Result<S> {
    let e: Element<S> = Element::parse(scalar_basis(), s).map_err(|e| err(path, e))?;
    if e.max_degree().unwrap_or(0) > 0 {
        return Err(err(path, format!("`{s}` is not a constant")));
    }
    Ok(e.constant_term())
}

fn real_from_json(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| err(path, e)),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| err(path, e)),
        _ => Err(err(path, "expected a number or a \"num/den\" string")),
    }
}

pub fn scalar_from_json<S: Coeff>(v: &Value, path: &str) -> Result<S> {
    match v {
        Value::String(s) => scalar_from_str(s, path),
        Value::Number(_) => Ok(S::from_rational(&real_from_json(v, path)?, &BigRational::zero())),
        Value::Object(_) => {
            let re = match v.get("re") {
                Some(x) => real_from_json(x, &format!("{path}.re"))?,
                None => BigRational::zero(),
            };
            let im = match v.get("im") {
                Some(x) => real_from_json(x, &format!("{path}.im"))?,
                None => BigRational::zero(),
            };
            Ok(S::from_rational(&re, &im))
        }
        _ => Err(err(path, "expected a scalar")),
    }
}

/// Reads a nonnegative real given as a number or rational string.
pub fn real_f64_from_json(v: &Value, path: &str) -> Result<f64> {
    real_from_json(v, path)?
        .to_f64()
        .ok_or_else(|| err(path, "value out of range"))
}

pub fn element_terms_to_json<S: Coeff>(a: &Element<S>) -> Value {
    let b = a.basis();
    Value::Array(
        a.terms()
            .iter()
            .map(|(m, c)| {
                let even: Map<String, Value> = m
                    .even_exponents(b)
                    .map(|(i, k)| (b.name(i).to_string(), json!(k)))
                    .collect();
                let odd: Vec<Value> = m.odd_indices(b).map(|i| json!(b.name(i))).collect();
                json!({"even": even, "odd": odd, "coeff": scalar_to_json(c)})
            })
            .collect(),
    )
}

pub fn element_to_json<S: Coeff>(a: &Element<S>) -> Value {
    json!({
        "basis": basis_to_json(a.basis()),
        "scalar": S::BACKEND.name(),
        "terms": element_terms_to_json(a),
    })
}

/// An element as an expression string, a term list, or an object with
/// `terms` (list or string) and an optional `basis` overriding `basis`.
pub fn element_from_json<S: Coeff>(v: &Value, basis: Option<&Arc<GeneratorBasis>>, path: &str) -> Result<Element<S>> {
    match v {
        Value::String(s) => {
            let b = basis.ok_or_else(|| err(path, "an expression needs a basis"))?;
            Element::parse(b, s).map_err(|e| err(path, e))
        }
        Value::Array(_) => {
            let b = basis.ok_or_else(|| err(path, "a term list needs a basis"))?;
            terms_from_json(v, b, path)
        }
        Value::Object(_) => {
            let own;
            let b = match v.get("basis") {
                Some(bv) => {
                    own = basis_from_json(bv, &format!("{path}.basis"))?;
                    &own
                }
                None => basis.ok_or_else(|| err(path, "missing field `basis`"))?,
            };
            let terms = field(v, "terms", path)?;
            element_from_json(terms, Some(b), &format!("{path}.terms"))
        }
        _ => Err(err(path, "expected an element")),
    }
}

fn terms_from_json<S: Coeff>(v: &Value, basis: &Arc<GeneratorBasis>, path: &str) -> Result<Element<S>> {
    let items = v.as_array().ok_or_else(|| err(path, "expected an array of terms"))?;
    let mut out = Element::zero(basis);
    for (k, item) in items.iter().enumerate() {
        let p = format!("{path}[{k}]");
        let coeff: S = scalar_from_json(field(item, "coeff", &p)?, &format!("{p}.coeff"))?;
        let mut term = Element::constant(basis, coeff);
        if let Some(even) = item.get("even") {
            let even = even.as_object().ok_or_else(|| err(&format!("{p}.even"), "expected an object"))?;
            for (name, k) in even {
                let q = format!("{p}.even.{name}");
                let i = basis.index(name).map_err(|e| err(&q, e))?;
                if basis.is_odd(i) {
                    return Err(err(&q, format!("`{name}` is odd")));
                }
                let k = k.as_u64().ok_or_else(|| err(&q, "expected a nonnegative integer"))?;
                term = &term * &Element::generator(basis, i).pow(k as u32);
            }
        }
        if let Some(odd) = item.get("odd") {
            let odd = odd.as_array().ok_or_else(|| err(&format!("{p}.odd"), "expected an array"))?;
            for (j, name) in odd.iter().enumerate() {
                let q = format!("{p}.odd[{j}]");
                let name = name.as_str().ok_or_else(|| err(&q, "expected a generator name"))?;
                let i = basis.index(name).map_err(|e| err(&q, e))?;
                if !basis.is_odd(i) {
                    return Err(err(&q, format!("`{name}` is even")));
                }
                term = &term * &Element::generator(basis, i);
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

pub fn form_to_json<S: Coeff>(f: &BilinearForm<S>) -> Value {
    let matrix: Vec<Vec<Value>> = f
        .matrix()
        .iter()
        .map(|row| row.iter().map(|c| scalar_to_json(c)).collect())
        .collect();
    json!({"basis": basis_to_json(f.basis()), "scalar": S::BACKEND.name(), "matrix": matrix})
}

/// Consecutive even generators `(e₀, e₁), (e₂, e₃), …` as canonical pairs.
pub fn default_pairs(basis: &GeneratorBasis) -> Vec<(String, String)> {
    basis
        .even_indices()
        .chunks_exact(2)
        .map(|c| (basis.name(c[0]).to_string(), basis.name(c[1]).to_string()))
        .collect()
}

/// A form as `{"basis"?, "matrix"}`, a preset name (`"standard"`,
/// `"weyl"`, `"darboux"`) over [`default_pairs`], or
/// `{"preset", "pairs": [["q", "p"], …]}`.
pub fn form_from_json<S: Coeff>(v: &Value, basis: Option<&Arc<GeneratorBasis>>, path: &str) -> Result<BilinearForm<S>> {
    let own;
    let b = match v.get("basis") {
        Some(bv) => {
            own = basis_from_json(bv, &format!("{path}.basis"))?;
            &own
        }
        None => basis.ok_or_else(|| err(path, "missing field `basis`"))?,
    };
    let (preset, pairs) = match v {
        Value::String(s) => (Some(s.as_str()), default_pairs(b)),
        Value::Object(_) if v.get("preset").is_some() => {
            let name = v["preset"].as_str().ok_or_else(|| err(&format!("{path}.preset"), "expected a string"))?;
            let pairs = match v.get("pairs") {
                None => default_pairs(b),
                Some(p) => pairs_from_json(p, &format!("{path}.pairs"))?,
            };
            (Some(name), pairs)
        }
        _ => (None, Vec::new()),
    };
    if let Some(name) = preset {
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, c)| (a.as_str(), c.as_str())).collect();
        let made = match name {
            "standard" | "standard-ordered" => presets::standard_ordered(b, &refs),
            "weyl" => presets::weyl(b, &refs),
            "darboux" => presets::darboux(b, &refs),
            other => return Err(err(path, format!("unknown preset `{other}`"))),
        };
        return made.map_err(|e| err(path, e));
    }
    let rows = field(v, "matrix", path)?
        .as_array()
        .ok_or_else(|| err(&format!("{path}.matrix"), "expected an array of rows"))?;
    let mut matrix = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let p = format!("{path}.matrix[{i}]");
        let row = row.as_array().ok_or_else(|| err(&p, "expected an array"))?;
        matrix.push(
            row.iter()
                .enumerate()
                .map(|(j, c)| scalar_from_json(c, &format!("{p}[{j}]")))
                .collect::<Result<Vec<S>>>()?,
        );
    }
    BilinearForm::new(b, matrix)
}

fn pairs_from_json(v: &Value, path: &str) -> Result<Vec<(String, String)>> {
    let items = v.as_array().ok_or_else(|| err(path, "expected an array of pairs"))?;
    items
        .iter()
        .enumerate()
        .map(|(k, p)| match p.as_array().map(Vec::as_slice) {
            Some([Value::String(a), Value::String(b)]) => Ok((a.clone(), b.clone())),
            _ => Err(err(&format!("{path}[{k}]"), "expected a pair of names")),
        })
        .collect()
}

/// Sparse map `{"t,x": "num/den"}` of the nonzero cells.
pub fn section_to_json(s: &LatticeSection) -> Value {
    let map: BTreeMap<(usize, usize), String> = s
        .support()
        .into_iter()
        .map(|(t, x)| ((t, x), format_rational(s.get(t, x))))
        .collect();
    Value::Object(map.into_iter().map(|((t, x), v)| (format!("{t},{x}"), Value::String(v))).collect())
}

pub fn section_from_json(v: &Value, lattice: &LatticeSpacetime, path: &str) -> Result<LatticeSection> {
    let map = v.as_object().ok_or_else(|| err(path, "expected a map from \"t,x\" to values"))?;
    let mut s = lattice.zero();
    for (key, value) in map {
        let p = format!("{path}.{key}");
        let (t, x) = key
            .split_once(',')
            .and_then(|(t, x)| Some((t.trim().parse::<usize>().ok()?, x.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| err(&p, "keys must look like \"t,x\""))?;
        s.set(t, x, real_from_json(value, &p)?).map_err(|e| err(&p, e))?;
    }
    Ok(s)
}

/// A dense Gram matrix of rationals as strings.
pub fn rational_matrix_to_json(m: &[Vec<BigRational>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|v| Value::String(format_rational(v))).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Exact, Float};

    fn odd_basis() -> Arc<GeneratorBasis> {
        GeneratorBasis::new([("q", Parity::Even), ("e1", Parity::Odd), ("e2", Parity::Odd)]).unwrap()
    }

    #[test]
    fn element_round_trip() {
        let b = odd_basis();
        let a: Element<Exact> = Element::parse(&b, "q^2*e1*e2 - 1/3*e2 + i*q + 7").unwrap();
        let v = element_to_json(&a);
        assert_eq!(v["scalar"], "exact");
        let back: Element<Exact> = element_from_json(&v, None, "a").unwrap();
        assert_eq!(back, a);
        let f: Element<Float> = a.to_backend();
        let back: Element<Float> = element_from_json(&element_to_json(&f), None, "a").unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn odd_order_sets_the_sign() {
        let b = odd_basis();
        let v = json!([{"odd": ["e2", "e1"], "coeff": "1"}]);
        let a: Element<Exact> = element_from_json(&v, Some(&b), "a").unwrap();
        assert_eq!(a, Element::parse(&b, "-e1*e2").unwrap());
    }

    #[test]
    fn scalar_forms() {
        assert_eq!(scalar_from_json::<Exact>(&json!("-1/2"), "z").unwrap(), q(-1, 2));
        assert_eq!(scalar_from_json::<Exact>(&json!(0.25), "z").unwrap(), q(1, 4));
        assert_eq!(
            scalar_from_json::<Exact>(&json!({"re": "1", "im": "-2/3"}), "z").unwrap(),
            Exact::new(BigRational::from_integer(1.into()), BigRational::new((-2).into(), 3.into()))
        );
        assert_eq!(scalar_to_json(&q(3, 4)), json!({"re": "3/4", "im": "0"}));
        let e = scalar_from_json::<Exact>(&json!({"re": "x"}), "a.z").unwrap_err();
        assert!(e.to_string().contains("a.z.re"));
    }

    #[test]
    fn presets_and_matrices() {
        let b = GeneratorBasis::even(&["q", "p"]).unwrap();
        let std: BilinearForm<Exact> = form_from_json(&json!("standard"), Some(&b), "l").unwrap();
        assert_eq!(std.get(1, 0), &q(1, 1));
        let m: BilinearForm<Exact> = form_from_json(&json!({"matrix": [["0", "1"], ["-1", "0"]]}), Some(&b), "l").unwrap();
        assert_eq!(m, presets::darboux(&b, &[("q", "p")]).unwrap());
        let back: BilinearForm<Exact> = form_from_json(&form_to_json(&m), None, "l").unwrap();
        assert_eq!(back, m);
        let odd = odd_basis();
        let bad = form_from_json::<Exact>(&json!({"matrix": [["0","1","0"],["0","0","0"],["0","0","0"]]}), Some(&odd), "l");
        assert_eq!(bad.unwrap_err(), Error::ParityBlock { row: 0, col: 1 });
    }

    #[test]
    fn sections_round_trip() {
        let lat = LatticeSpacetime::massless(5, 4).unwrap();
        let mut s = lat.zero();
        s.set(2, 3, BigRational::new(5.into(), 7.into())).unwrap();
        s.set(1, 0, BigRational::from_integer((-2).into())).unwrap();
        let v = section_to_json(&s);
        assert_eq!(v, json!({"1,0": "-2", "2,3": "5/7"}));
        assert_eq!(section_from_json(&v, &lat, "phi").unwrap(), s);
        assert!(section_from_json(&json!({"9,0": "1"}), &lat, "phi").is_err());
    }
}
