//! Buffers, character regions, and atomic edit transactions.
//!
//! Every offset in this crate counts Unicode scalar values (Rust `char`s),
//! never bytes. Regions are half-open.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("edits {first} and {second} overlap")]
    OverlappingEdits {
        first: TextRegion,
        second: TextRegion,
    },
    #[error("range {range} exceeds buffer length {len}")]
    RangeOutOfBounds { range: TextRegion, len: usize },
    #[error("cursor {cursor} exceeds post-edit length {len}")]
    CursorOutOfBounds { cursor: usize, len: usize },
}

/// A half-open range `[start, end)` of character offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TextRegion {
    pub start: usize,
    pub end: usize,
}

impl TextRegion {
    /// # Panics
    ///
    /// Panics if `end < start`.
    pub fn new(start: usize, end: usize) -> Self {
        assert!(start <= end, "inverted region [{start},{end})");
        TextRegion { start, end }
    }

    pub fn empty(at: usize) -> Self {
        TextRegion { start: at, end: at }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// `start <= offset < end`; an empty region contains only its own anchor.
    pub fn contains(&self, offset: usize) -> bool {
        if self.is_empty() {
            offset == self.start
        } else {
            self.start <= offset && offset < self.end
        }
    }

    pub fn contains_region(&self, other: &TextRegion) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &TextRegion) -> bool {
        self.start < other.end && other.start < self.end
    }

    /// Smallest region covering both.
    pub fn hull(&self, other: &TextRegion) -> TextRegion {
        TextRegion {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }

    pub fn translate(&self, delta: isize) -> TextRegion {
        TextRegion {
            start: offset_by(self.start, delta),
            end: offset_by(self.end, delta),
        }
    }
}

impl fmt::Display for TextRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

pub fn region_contains(r: TextRegion, offset: usize) -> bool {
    r.contains(offset)
}

fn offset_by(offset: usize, delta: isize) -> usize {
    let moved = offset as isize + delta;
    debug_assert!(moved >= 0, "offset {offset} moved below zero by {delta}");
    moved.max(0) as usize
}

/// Maps `r` through the replacement of `[edit_start, edit_start + removed_len)`
/// by `inserted_len` characters.
///
/// Regions after the edit shift, regions before it stay put, regions that
/// contain the whole edit (edges included) absorb the net length change, and
/// regions partially covered keep only their surviving characters. A region
/// that is removed entirely collapses to an empty region at `edit_start`.
/// An insertion exactly at a region's start lands inside it; one exactly at
/// its end lands outside.
pub fn adjust_region(
    r: TextRegion,
    edit_start: usize,
    removed_len: usize,
    inserted_len: usize,
) -> TextRegion {
    if removed_len == 0 && inserted_len == 0 {
        return r;
    }
    let edit_end = edit_start + removed_len;
    let delta = inserted_len as isize - removed_len as isize;

    if edit_end <= r.start && (removed_len > 0 || edit_start < r.start) {
        return r.translate(delta);
    }
    if r.end <= edit_start {
        return r;
    }
    if r.start <= edit_start && edit_end <= r.end {
        return TextRegion {
            start: r.start,
            end: offset_by(r.end, delta),
        };
    }
    let start = if r.start < edit_start {
        r.start
    } else {
        edit_start + inserted_len
    };
    let end = if r.end > edit_end {
        offset_by(r.end, delta)
    } else {
        edit_start
    };
    if end < start {
        TextRegion::empty(edit_start)
    } else {
        TextRegion { start, end }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Buffer {
    pub id: String,
    pub text: String,
    pub version: u64,
}

impl Buffer {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Buffer {
            id: id.into(),
            text: text.into(),
            version: 1,
        }
    }

    pub fn len_chars(&self) -> usize {
        char_len(&self.text)
    }
}

/// One range replacement, expressed against the pre-edit text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edit {
    pub range: TextRegion,
    pub replacement: String,
}

impl Edit {
    pub fn new(range: TextRegion, replacement: impl Into<String>) -> Self {
        Edit {
            range,
            replacement: replacement.into(),
        }
    }

    pub fn delete(range: TextRegion) -> Self {
        Edit::new(range, "")
    }

    pub fn inserted_len(&self) -> usize {
        char_len(&self.replacement)
    }
}

/// Simultaneous, non-overlapping edits plus the cursor to show afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EditTransaction {
    pub edits: Vec<Edit>,
    pub cursor_after: usize,
}

impl EditTransaction {
    pub fn new(edits: Vec<Edit>, cursor_after: usize) -> Self {
        EditTransaction {
            edits,
            cursor_after,
        }
    }

    /// Edits in application order: ascending start, zero-width insertions
    /// before a replacement sharing their start, ties otherwise stable.
    pub fn sorted_edits(&self) -> Vec<&Edit> {
        let mut sorted: Vec<&Edit> = self.edits.iter().collect();
        sorted.sort_by_key(|e| (e.range.start, e.range.end));
        sorted
    }

    pub fn check(&self, len: usize) -> Result<(), TextError> {
        let sorted = self.sorted_edits();
        for edit in &sorted {
            if edit.range.end > len {
                return Err(TextError::RangeOutOfBounds {
                    range: edit.range,
                    len,
                });
            }
        }
        for pair in sorted.windows(2) {
            if pair[0].range.end > pair[1].range.start {
                return Err(TextError::OverlappingEdits {
                    first: pair[0].range,
                    second: pair[1].range,
                });
            }
        }
        Ok(())
    }

    pub fn net_delta(&self) -> isize {
        self.edits
            .iter()
            .map(|e| e.inserted_len() as isize - e.range.len() as isize)
            .sum()
    }

    /// Maps a pre-edit region into post-edit coordinates.
    pub fn map_region(&self, r: TextRegion) -> TextRegion {
        self.sorted_edits().iter().rev().fold(r, |acc, e| {
            adjust_region(acc, e.range.start, e.range.len(), e.inserted_len())
        })
    }
}

/// Applies every edit of `t` as of the pre-edit text of `b`.
pub fn apply_transaction(b: &Buffer, t: &EditTransaction) -> Result<Buffer, TextError> {
    let len = b.len_chars();
    t.check(len)?;
    let new_len = (len as isize + t.net_delta()) as usize;
    if t.cursor_after > new_len {
        return Err(TextError::CursorOutOfBounds {
            cursor: t.cursor_after,
            len: new_len,
        });
    }
    let chars: Vec<char> = b.text.chars().collect();
    let mut out = String::with_capacity(b.text.len());
    let mut at = 0;
    for edit in t.sorted_edits() {
        out.extend(&chars[at..edit.range.start]);
        out.push_str(&edit.replacement);
        at = edit.range.end;
    }
    out.extend(&chars[at..]);
    Ok(Buffer {
        id: b.id.clone(),
        text: out,
        version: b.version + 1,
    })
}

pub fn char_len(s: &str) -> usize {
    s.chars().count()
}

/// Byte index of the character offset `offset`; `offset == len` maps to `s.len()`.
pub fn byte_index(s: &str, offset: usize) -> Option<usize> {
    if offset == 0 {
        return Some(0);
    }
    s.char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(s.len()))
        .nth(offset)
}

/// Text covered by `r`, or `None` when `r` runs past the end of `s`.
pub fn slice(s: &str, r: TextRegion) -> Option<&str> {
    let start = byte_index(s, r.start)?;
    let end = byte_index(s, r.end)?;
    s.get(start..end)
}
