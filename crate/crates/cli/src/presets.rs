//! Built-in scenarios, embedded at compile time.

pub struct Preset {
    pub name: &'static str,
    pub source: &'static str,
}

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        &[$(Preset { name: $name, source: include_str!(concat!("../presets/", $name, ".toml")) }),*]
    };
}

pub const PRESETS: &[Preset] = presets![
    "madelung-vs-schrodinger",
    "energy-superselect",
    "degenerate-ring",
    "spin-superselect",
    "gaussian-superselect",
    "discrete-rates",
    "phase-demo",
    "classical-hj",
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

/// The `description` line of a preset, for listings.
pub fn description(p: &Preset) -> &'static str {
    p.source
        .lines()
        .find_map(|l| l.strip_prefix("description = \""))
        .and_then(|l| l.strip_suffix('"'))
        .unwrap_or("")
}
