use crate::algebra::{power_set, power_set_without, PartialAlgebra, Signature};
use crate::error::{Error, Result};

use super::axial::{gen_a, gen_x};
use super::family::{gen_aminus, gen_b};

/// A named algebra family, parameterised by a list of sizes.
pub trait Generator: Send + Sync {
    fn name(&self) -> &'static str;
    /// Parameter names, e.g. `["m", "n"]`.
    fn params(&self) -> &'static [&'static str];
    fn description(&self) -> &'static str;
    fn generate(&self, params: &[usize]) -> Result<PartialAlgebra>;
}

struct Grid2 {
    name: &'static str,
    description: &'static str,
    build: fn(usize, usize) -> Result<PartialAlgebra>,
}

impl Generator for Grid2 {
    fn name(&self) -> &'static str {
        self.name
    }

    fn params(&self) -> &'static [&'static str] {
        &["m", "n"]
    }

    fn description(&self) -> &'static str {
        self.description
    }

    fn generate(&self, params: &[usize]) -> Result<PartialAlgebra> {
        (self.build)(params[0], params[1])
    }
}

struct Power {
    without_top: bool,
}

impl Generator for Power {
    fn name(&self) -> &'static str {
        if self.without_top {
            "power-no-top"
        } else {
            "power"
        }
    }

    fn params(&self) -> &'static [&'static str] {
        &["k"]
    }

    fn description(&self) -> &'static str {
        if self.without_top {
            "subsets of {1..k} except the whole set, under disjoint union"
        } else {
            "all subsets of {1..k} under disjoint union"
        }
    }

    fn generate(&self, params: &[usize]) -> Result<PartialAlgebra> {
        let k = params[0];
        if k > 10 {
            return Err(Error::TooLarge {
                what: "power-set exponent",
                size: k,
                cap: 10,
            });
        }
        if self.without_top {
            power_set_without(k, &[(1u64 << k) - 1], Signature::JOIN)
        } else {
            power_set(k, Signature::JOIN)
        }
    }
}

/// Generators selectable by name.
pub struct GeneratorRegistry {
    generators: Vec<Box<dyn Generator>>,
}

impl Default for GeneratorRegistry {
    fn default() -> Self {
        let mut r = GeneratorRegistry { generators: Vec::new() };
        r.register(Box::new(Grid2 {
            name: "X",
            description: "axial subsets of m × n under disjoint union, with zero",
            build: gen_x,
        }));
        r.register(Box::new(Grid2 {
            name: "A",
            description: "X(m, n) with full lines and complementary lines glued",
            build: gen_a,
        }));
        r.register(Box::new(Grid2 {
            name: "Aminus",
            description: "A(m, n) with minus defined from join",
            build: gen_aminus,
        }));
        r.register(Box::new(Grid2 {
            name: "B",
            description: "A(m, n) with the constant-zero composition",
            build: gen_b,
        }));
        r.register(Box::new(Power { without_top: false }));
        r.register(Box::new(Power { without_top: true }));
        r
    }
}

impl GeneratorRegistry {
    pub fn register(&mut self, g: Box<dyn Generator>) {
        self.generators.push(g);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Generator> {
        self.generators.iter().find(|g| g.name() == name).map(|g| g.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.generators.iter().map(|g| g.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Generator> {
        self.generators.iter().map(|g| g.as_ref())
    }

    /// Looks up `name` and checks the parameter count before generating.
    pub fn generate(&self, name: &str, params: &[usize]) -> Result<PartialAlgebra> {
        let g = self.get(name).ok_or_else(|| {
            Error::precondition(format!(
                "unknown generator `{name}` (known: {})",
                self.names().join(", ")
            ))
        })?;
        if params.len() != g.params().len() {
            return Err(Error::precondition(format!(
                "generator {name} takes {} parameter(s): {}",
                g.params().len(),
                g.params().join(" ")
            )));
        }
        g.generate(params)
    }
}
