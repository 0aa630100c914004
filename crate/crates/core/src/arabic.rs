//! Arabic text helpers shared by the parser and the output repairer.

use alloc::string::String;

pub const TATWEEL: char = '\u{0640}';

/// Remove tatweel (kashida) elongation characters.
pub fn strip_tatweel(s: &str) -> String {
    s.chars().filter(|&c| c != TATWEEL).collect()
}

fn is_harakah(c: char) -> bool {
    matches!(c, '\u{064B}'..='\u{0652}' | '\u{0670}')
}

/// Matcher-level folding key: no tatweel or short vowels, alef-maqsura read
/// as ya, hamza-carrying alefs read as bare alef, single spaces.
///
/// Only used to compare text; canonical labels are never rewritten with it.
pub fn fold(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut pending_space = false;
    for c in s.chars() {
        if c == TATWEEL || is_harakah(c) {
            continue;
        }
        if c.is_whitespace() {
            pending_space = !out.is_empty();
            continue;
        }
        if pending_space {
            out.push(' ');
            pending_space = false;
        }
        out.push(match c {
            '\u{0649}' => '\u{064A}',
            '\u{0623}' | '\u{0625}' | '\u{0622}' => '\u{0627}',
            other => other,
        });
    }
    out
}

/// The residue phrase in both of its common spellings.
pub const RESIDUE_PHRASE: &str = "باقي التركة";
pub const RESIDUE_PHRASE_VARIANT: &str = "باقى التركة";

/// Correct the alef-maqsura spelling of "باقى" to "باقي".
pub fn fix_residue_spelling(s: &str) -> String {
    s.replace("باقى", "باقي")
}
