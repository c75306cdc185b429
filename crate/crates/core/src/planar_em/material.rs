use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Environment variable naming a registry file that replaces the shipped one.
pub const REGISTRY_ENV: &str = "LATERAL_CP_MATERIALS";

const SHIPPED_REGISTRY: &str = include_str!("../../materials.toml");

/// A homogeneous, isotropic half-space characterised by its relative
/// permittivity at the transition frequency, or flagged as a perfect
/// conductor (`r_p = +1`, `r_s = −1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    name: String,
    epsilon: Complex64,
    perfect_conductor: bool,
}

impl Material {
    pub fn dielectric(name: impl Into<String>, epsilon: Complex64) -> Result<Self> {
        let name = name.into();
        if !(epsilon.re.is_finite() && epsilon.im.is_finite()) {
            return Err(Error::InvalidMaterial {
                name,
                reason: "permittivity must be finite".into(),
            });
        }
        if epsilon.im < 0.0 {
            return Err(Error::InvalidMaterial {
                name,
                reason: format!("Im(epsilon) = {} < 0 describes a gain medium", epsilon.im),
            });
        }
        Ok(Self {
            name,
            epsilon,
            perfect_conductor: false,
        })
    }

    pub fn perfect_conductor() -> Self {
        Self {
            name: "pc".into(),
            epsilon: Complex64::new(1.0, 0.0),
            perfect_conductor: true,
        }
    }

    pub fn vacuum() -> Self {
        Self {
            name: "vacuum".into(),
            epsilon: Complex64::new(1.0, 0.0),
            perfect_conductor: false,
        }
    }

    pub fn gold() -> Self {
        Self {
            name: "gold".into(),
            epsilon: Complex64::new(1.40, 1.35),
            perfect_conductor: false,
        }
    }

    pub fn silica() -> Self {
        Self {
            name: "silica".into(),
            epsilon: Complex64::new(1.45, 2.05e-7),
            perfect_conductor: false,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Permittivity of a dielectric; `None` for the perfect conductor.
    pub fn epsilon(&self) -> Option<Complex64> {
        (!self.perfect_conductor).then_some(self.epsilon)
    }

    /// Permittivity used to fill in `kz_med` of a mode. The perfect conductor
    /// never reads it, so vacuum is substituted.
    pub fn medium_epsilon(&self) -> Complex64 {
        self.epsilon
    }

    pub fn is_perfect_conductor(&self) -> bool {
        self.perfect_conductor
    }

    pub fn is_lossless(&self) -> bool {
        !self.perfect_conductor && self.epsilon.im == 0.0
    }
}

impl fmt::Display for Material {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.perfect_conductor {
            write!(f, "{} (perfect conductor)", self.name)
        } else {
            write!(f, "{} (eps = {} + {}i)", self.name, self.epsilon.re, self.epsilon.im)
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RegistryFile {
    #[serde(default)]
    material: Vec<Entry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps_re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps_im: Option<f64>,
    #[serde(default)]
    perfect_conductor: bool,
}

/// Named materials, in file order.
#[derive(Debug, Clone)]
pub struct MaterialRegistry {
    materials: Vec<Material>,
}

impl MaterialRegistry {
    /// The registry shipped with the crate: gold, silica, pc, vacuum.
    pub fn shipped() -> Self {
        Self::parse(SHIPPED_REGISTRY).expect("shipped registry is valid")
    }

    /// Uses the file named by [`REGISTRY_ENV`] when set, the shipped
    /// registry otherwise.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(REGISTRY_ENV) {
            Some(path) => Self::load(path),
            None => Ok(Self::shipped()),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: RegistryFile = toml::from_str(text).map_err(|e| Error::Registry(e.to_string()))?;
        let mut materials = Vec::with_capacity(file.material.len());
        for entry in file.material {
            if materials.iter().any(|m: &Material| m.name == entry.name) {
                return Err(Error::Registry(format!("duplicate material `{}`", entry.name)));
            }
            let material = if entry.perfect_conductor {
                Material {
                    name: entry.name,
                    ..Material::perfect_conductor()
                }
            } else {
                let (Some(re), Some(im)) = (entry.eps_re, entry.eps_im) else {
                    return Err(Error::Registry(format!(
                        "material `{}` needs eps_re and eps_im",
                        entry.name
                    )));
                };
                Material::dielectric(entry.name, Complex64::new(re, im))?
            };
            materials.push(material);
        }
        Ok(Self { materials })
    }

    pub fn get(&self, name: &str) -> Result<&Material> {
        self.materials
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::UnknownMaterial(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Material> {
        self.materials.iter()
    }

    pub fn len(&self) -> usize {
        self.materials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.materials.is_empty()
    }

    /// SHA-256 over a canonical rendering of the entries; recorded in run
    /// metadata so outputs can be tied to the permittivities used.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        for m in &self.materials {
            if m.perfect_conductor {
                hasher.update(format!("{}\tpc\n", m.name));
            } else {
                hasher.update(format!(
                    "{}\t{:016x}\t{:016x}\n",
                    m.name,
                    m.epsilon.re.to_bits(),
                    m.epsilon.im.to_bits()
                ));
            }
        }
        hex::encode(hasher.finalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_registry_matches_constructors() {
        let reg = MaterialRegistry::shipped();
        assert_eq!(reg.len(), 4);
        assert_eq!(reg.get("gold").unwrap(), &Material::gold());
        assert_eq!(reg.get("silica").unwrap(), &Material::silica());
        assert_eq!(reg.get("pc").unwrap(), &Material::perfect_conductor());
        assert_eq!(reg.get("vacuum").unwrap(), &Material::vacuum());
    }

    #[test]
    fn unknown_material() {
        let reg = MaterialRegistry::shipped();
        assert!(matches!(reg.get("unobtainium"), Err(Error::UnknownMaterial(_))));
    }

    #[test]
    fn gain_medium_rejected() {
        let err = Material::dielectric("gain", Complex64::new(2.0, -0.1)).unwrap_err();
        assert!(matches!(err, Error::InvalidMaterial { .. }));
        let text = "[[material]]\nname = \"x\"\neps_re = 2.0\neps_im = -1.0\n";
        assert!(MaterialRegistry::parse(text).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(MaterialRegistry::parse("[[material]]\nname = \"x\"\neps_re = 2.0\n").is_err());
        assert!(MaterialRegistry::parse("[[material]]\nname = \"x\"\nbogus = 1\n").is_err());
        let dup = "[[material]]\nname = \"a\"\nperfect_conductor = true\n\
                   [[material]]\nname = \"a\"\nperfect_conductor = true\n";
        assert!(MaterialRegistry::parse(dup).is_err());
    }

    #[test]
    fn hash_tracks_contents() {
        let a = MaterialRegistry::shipped();
        let b = MaterialRegistry::parse(
            "[[material]]\nname = \"gold\"\neps_re = 1.40\neps_im = 1.36\n",
        )
        .unwrap();
        assert_eq!(a.hash(), MaterialRegistry::shipped().hash());
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn perfect_conductor_has_no_epsilon() {
        assert!(Material::perfect_conductor().epsilon().is_none());
        assert!(!Material::perfect_conductor().is_lossless());
        assert!(Material::vacuum().is_lossless());
    }
}
