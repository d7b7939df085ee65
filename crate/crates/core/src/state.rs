//! Per-vertex epidemic states and full-network configurations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// State of a single vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexState {
    S,
    I,
    R,
}

impl VertexState {
    pub fn as_char(self) -> char {
        match self {
            VertexState::S => 'S',
            VertexState::I => 'I',
            VertexState::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'S' | 's' => Ok(VertexState::S),
            'I' | 'i' => Ok(VertexState::I),
            'R' | 'r' => Ok(VertexState::R),
            _ => Err(Error::InvalidConfiguration(format!(
                "unknown state character {c:?}"
            ))),
        }
    }
}

impl std::fmt::Display for VertexState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Snapshot of every vertex state at one instant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    states: Vec<VertexState>,
}

impl Configuration {
    pub fn new(states: Vec<VertexState>) -> Self {
        Configuration { states }
    }

    pub fn all_susceptible(n: usize) -> Self {
        Configuration {
            states: vec![VertexState::S; n],
        }
    }

    pub fn all_infected(n: usize) -> Self {
        Configuration {
            states: vec![VertexState::I; n],
        }
    }

    /// All susceptible except a single infected vertex.
    pub fn single_infected(n: usize, v: u32) -> Result<Self> {
        if (v as usize) >= n {
            return Err(Error::InvalidConfiguration(format!(
                "vertex {v} out of range for n = {n}"
            )));
        }
        let mut states = vec![VertexState::S; n];
        states[v as usize] = VertexState::I;
        Ok(Configuration { states })
    }

    /// Parses a string like "SIRS" with one character per vertex.
    pub fn parse(s: &str) -> Result<Self> {
        let states = s
            .trim()
            .chars()
            .map(VertexState::from_char)
            .collect::<Result<Vec<_>>>()?;
        if states.is_empty() {
            return Err(Error::InvalidConfiguration("empty state string".into()));
        }
        Ok(Configuration { states })
    }

    pub fn n(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, v: u32) -> VertexState {
        self.states[v as usize]
    }

    pub fn set(&mut self, v: u32, s: VertexState) {
        self.states[v as usize] = s;
    }

    pub fn states(&self) -> &[VertexState] {
        &self.states
    }

    pub fn is_infected(&self, v: u32) -> bool {
        self.states[v as usize] == VertexState::I
    }

    pub fn infected_count(&self) -> usize {
        self.states
            .iter()
            .filter(|&&s| s == VertexState::I)
            .count()
    }

    pub fn contains_recovered(&self) -> bool {
        self.states.iter().any(|&s| s == VertexState::R)
    }

    /// (#S, #I, #R)
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for &s in &self.states {
            match s {
                VertexState::S => c.0 += 1,
                VertexState::I => c.1 += 1,
                VertexState::R => c.2 += 1,
            }
        }
        c
    }
}

impl std::fmt::Display for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.states {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}
