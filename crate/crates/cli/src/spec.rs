//! Spec strings for structured arguments:
//!
//! ```text
//! deriv  deg=(-1,0) x1->1 x2->0
//! fvform k=1 deg=(0,0) x1->d(x1) x2->d(x2)
//! omega  deg=1:(0,0) x1->d(x1) x2->d(x2) d(x1)->0 d(x2)->0
//! hom    x1->x1 x2->0
//! ```
//!
//! Generators without an entry map to zero. Missing `deg=`/`k=` are inferred
//! from the first nonzero value.

use std::sync::{Arc, OnceLock};

use regex::Regex;
use rhoforms::{
    AlgebraElement, AlgebraHom, BiGrade, Derivation, FieldValuedForm, Form, FormSpace, Grade, GradedUnitHom,
    OmegaDerivation, Presentation, Scalar,
};

use crate::error::CliError;
use crate::expr;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Spec<'a> {
    keys: Vec<(&'a str, &'a str)>,
    /// `(target, is_differential, value text)`
    entries: Vec<(String, bool, &'a str)>,
}

fn split<'a>(text: &'a str, head: &str) -> Result<Spec<'a>, CliError> {
    static MARKER: OnceLock<Regex> = OnceLock::new();
    let marker = MARKER.get_or_init(|| {
        Regex::new(r"(?:^|\s)(?:d\(\s*([A-Za-z][A-Za-z0-9_]*)\s*\)|([A-Za-z][A-Za-z0-9_]*))\s*->").unwrap()
    });
    let text = text.trim();
    let text = text.strip_prefix(head).map_or(text, str::trim_start);
    let caps: Vec<_> = marker.captures_iter(text).collect();
    let header_end = caps.first().map_or(text.len(), |c| c.get(0).unwrap().start());
    let mut keys = vec![];
    for kv in text[..header_end].split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| usage(format!("expected key=value in {head} spec, found '{kv}'")))?;
        keys.push((k, v));
    }
    let mut entries = vec![];
    for (i, c) in caps.iter().enumerate() {
        let end = caps.get(i + 1).map_or(text.len(), |n| n.get(0).unwrap().start());
        let value = text[c.get(0).unwrap().end()..end].trim();
        let (name, dx) = match (c.get(1), c.get(2)) {
            (Some(n), _) => (n.as_str().to_string(), true),
            (_, Some(n)) => (n.as_str().to_string(), false),
            _ => unreachable!(),
        };
        entries.push((name, dx, value));
    }
    Ok(Spec { keys, entries })
}

impl Spec<'_> {
    fn key(&self, k: &str) -> Option<&str> {
        self.keys.iter().find(|(key, _)| *key == k).map(|(_, v)| *v)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        match self.keys.iter().find(|(k, _)| !allowed.contains(k)) {
            Some((k, _)) => Err(usage(format!("unknown key '{k}'"))),
            None => Ok(()),
        }
    }

    /// Values indexed by generator, parsed with `parse`; `dx` selects `d(x)->` entries.
    fn values<T>(
        &self,
        pres: &Presentation,
        dx: bool,
        zero: impl Fn() -> T,
        parse: impl Fn(&str) -> Result<T, CliError>,
    ) -> Result<Vec<T>, CliError> {
        let mut out: Vec<T> = (0..pres.num_generators()).map(|_| zero()).collect();
        for (name, is_dx, text) in &self.entries {
            if *is_dx != dx {
                continue;
            }
            let i = pres.generator_index(name).ok_or_else(|| CliError::UnknownGenerator {
                name: name.clone(),
                line: 1,
                col: 1,
            })?;
            out[i] = parse(text)?;
        }
        Ok(out)
    }

    fn reject_dx(&self) -> Result<(), CliError> {
        match self.entries.iter().find(|(_, dx, _)| *dx) {
            Some((name, ..)) => Err(usage(format!("unexpected entry d({name})->"))),
            None => Ok(()),
        }
    }
}

fn grade(pres: &Presentation, text: &str) -> Result<Grade, CliError> {
    Ok(Grade::parse(pres.group(), text)?)
}

/// The grade of `v` minus the grade of generator `i`, for the first nonzero value.
fn infer_grade<T>(pres: &Presentation, values: &[T], grade_of: impl Fn(&T) -> Option<Grade>) -> Option<Grade> {
    values.iter().enumerate().find_map(|(i, v)| grade_of(v).map(|g| &g - &pres.group().generator(i)))
}

pub fn derivation(text: &str, space: &Arc<FormSpace>) -> Result<Derivation, CliError> {
    let pres = space.presentation();
    let spec = split(text, "deriv")?;
    spec.check_keys(&["deg"])?;
    spec.reject_dx()?;
    let values = spec.values(pres, false, || AlgebraElement::zero(pres), |t| expr::element(t, space))?;
    let deg = match spec.key("deg") {
        Some(g) => grade(pres, g)?,
        None => infer_grade(pres, &values, |v| v.grade().ok()).unwrap_or_else(|| pres.group().zero()),
    };
    Ok(Derivation::new(pres, deg, values)?)
}

pub fn fvform(text: &str, space: &Arc<FormSpace>) -> Result<FieldValuedForm, CliError> {
    let pres = space.presentation();
    let spec = split(text, "fvform")?;
    spec.check_keys(&["k", "deg"])?;
    spec.reject_dx()?;
    let values = spec.values(pres, false, || Form::zero(space), |t| expr::form(t, space))?;
    let inferred = infer_grade(pres, &values, |w| w.bigrade().ok().map(|b| b.grade));
    let k = match spec.key("k") {
        Some(k) => k.parse::<i64>().map_err(|_| usage(format!("cannot parse k='{k}'")))?,
        None => values.iter().find_map(|w| w.bigrade().ok()).map_or(0, |b| b.degree),
    };
    let deg = match spec.key("deg") {
        Some(g) => grade(pres, g)?,
        None => inferred.unwrap_or_else(|| pres.group().zero()),
    };
    Ok(FieldValuedForm::new(space, k, deg, values)?)
}

pub fn omega_derivation(text: &str, space: &Arc<FormSpace>) -> Result<OmegaDerivation, CliError> {
    let pres = space.presentation();
    let spec = split(text, "omega")?;
    spec.check_keys(&["deg"])?;
    let deg_text = spec.key("deg").ok_or_else(|| usage("omega spec needs deg=<k>:<grade>"))?;
    let (k, g) = deg_text.split_once(':').ok_or_else(|| usage(format!("cannot parse deg='{deg_text}'")))?;
    let k = k.parse::<i64>().map_err(|_| usage(format!("cannot parse degree '{k}'")))?;
    let degree = BiGrade::new(k, grade(pres, g)?);
    let on_x = spec.values(pres, false, || Form::zero(space), |t| expr::form(t, space))?;
    let on_dx = spec.values(pres, true, || Form::zero(space), |t| expr::form(t, space))?;
    Ok(OmegaDerivation::new(space, degree, on_x, on_dx)?)
}

pub fn hom(text: &str, space: &Arc<FormSpace>) -> Result<AlgebraHom, CliError> {
    let pres = space.presentation();
    let spec = split(text, "hom")?;
    spec.check_keys(&["deg"])?;
    spec.reject_dx()?;
    let images = spec.values(pres, false, || AlgebraElement::zero(pres), |t| expr::element(t, space))?;
    let deg = match spec.key("deg") {
        Some(g) => grade(pres, g)?,
        None => infer_grade(pres, &images, |v| v.grade().ok()).unwrap_or_else(|| pres.group().zero()),
    };
    Ok(AlgebraHom::new(space, space, deg, images)?)
}

/// `--phi` values on the generators of the grade group, comma separated.
pub fn phi(text: Option<&str>, pres: &Arc<Presentation>) -> Result<Arc<FormSpace>, CliError> {
    let Some(text) = text else {
        return Ok(FormSpace::trivial(pres));
    };
    let plain = FormSpace::trivial(pres);
    let values = text
        .split(',')
        .map(|t| {
            let u = expr::element(t, &plain)?;
            if u.is_zero() {
                return Ok(Scalar::zero());
            }
            u.as_scalar().ok_or_else(|| usage(format!("phi value '{t}' is not a scalar")))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let phi = GradedUnitHom::new(pres.group().clone(), values)?;
    Ok(FormSpace::new(pres, phi)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> Arc<FormSpace> {
        FormSpace::trivial(&Presentation::quantum_plane(2))
    }

    #[test]
    fn derivation_specs() {
        let s = space();
        let x = derivation("deriv deg=(-1,0) x1->1 x2->0", &s).unwrap();
        assert_eq!(x, Derivation::partial(s.presentation(), 0).unwrap());
        assert_eq!(derivation("x2 -> 1", &s).unwrap(), Derivation::partial(s.presentation(), 1).unwrap());
        assert_eq!(derivation(&x.to_string(), &s).unwrap(), x);
        assert!(matches!(derivation("deriv deg=(0,0) x1->1", &s), Err(CliError::Domain(_))));
    }

    #[test]
    fn form_valued_specs() {
        let s = space();
        let id = fvform("fvform k=1 deg=(0,0) x1->d(x1) x2->d(x2)", &s).unwrap();
        assert_eq!(id, FieldValuedForm::identity(&s));
        assert_eq!(fvform(&id.to_string(), &s).unwrap(), id);
        let k = fvform("x1 -> q*x2*x1 + x1*x1*d(x2)", &s);
        assert!(k.is_err(), "mixed target degrees are rejected");
        let d = omega_derivation("deg=1:(0,0) x1->d(x1) x2->d(x2)", &s).unwrap();
        assert_eq!(d, OmegaDerivation::exterior(&s));
        assert_eq!(omega_derivation(&d.to_string(), &s).unwrap(), d);
    }

    #[test]
    fn hom_and_phi() {
        let s = space();
        let f = hom("hom x1->x1 x2->0", &s).unwrap();
        assert_eq!(f.to_string(), "hom x1->x1 x2->0");
        assert!(hom("hom x1->x2 x2->x1", &s).is_err());
        let c = Presentation::cyclic(4).unwrap();
        let sp = phi(Some("eps"), &c).unwrap();
        assert_eq!(sp.phi().values(), &[Scalar::eps(4, 1)]);
    }
}
