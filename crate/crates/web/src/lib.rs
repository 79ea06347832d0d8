//! Three entry points for the static page: Segre class, CSM class and
//! Milnor class of forms over GF(65521). Inputs are a comma-separated
//! variable list and `;`-separated equations.

use wasm_bindgen::prelude::*;

use csm_forge::classes::{class_report, CompleteIntersection};
use csm_forge::groebner::Ideal;
use csm_forge::poly::{fmt_rational, parse_poly, Poly, PrimeField, Ring, DEFAULT_PRIME};
use csm_forge::segre::{segre_class, SegreConfig};

fn ring(vars: &str) -> csm_forge::Result<Ring<PrimeField>> {
    let names: Vec<&str> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
    Ring::grevlex(PrimeField::new(DEFAULT_PRIME)?, &names)
}

fn equations(ring: &Ring<PrimeField>, text: &str) -> csm_forge::Result<Vec<Poly<PrimeField>>> {
    text.split(';')
        .filter(|e| !e.trim().is_empty())
        .map(|e| parse_poly(e, ring))
        .collect()
}

fn complete_intersection(vars: &str, eqs: &str) -> csm_forge::Result<CompleteIntersection<PrimeField>> {
    let r = ring(vars)?;
    let ci = CompleteIntersection::new(&r, equations(&r, eqs)?)?;
    ci.check_codimension()?;
    Ok(ci)
}

fn js(e: csm_forge::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// `s = ...` for the ideal generated by the equations.
#[wasm_bindgen]
pub fn segre(vars: &str, eqs: &str) -> Result<String, JsError> {
    let r = ring(vars).map_err(js)?;
    let ideal = Ideal::new(&r, equations(&r, eqs).map_err(js)?).map_err(js)?;
    let out = segre_class(&ideal, &SegreConfig::default()).map_err(js)?;
    Ok(format!("s = {}", out.class))
}

/// `c_SM = ..., chi = ...`; the last equation is the distinguished one.
#[wasm_bindgen]
pub fn csm(vars: &str, eqs: &str) -> Result<String, JsError> {
    let ci = complete_intersection(vars, eqs).map_err(js)?;
    let r = class_report(&ci, &SegreConfig::default()).map_err(js)?;
    Ok(format!("c_SM = {}, chi = {}", r.csm, fmt_rational(&r.euler)))
}

/// `M = ...` together with the Chern-Fulton class.
#[wasm_bindgen]
pub fn milnor(vars: &str, eqs: &str) -> Result<String, JsError> {
    let ci = complete_intersection(vars, eqs).map_err(js)?;
    let r = class_report(&ci, &SegreConfig::default()).map_err(js)?;
    Ok(format!("M = {}, c_F = {}", r.milnor, r.fulton))
}
