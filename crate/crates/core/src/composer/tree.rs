use std::fmt;

use thiserror::Error;

/// Binary application structure over lexicon words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SyntaxTree {
    Leaf(String),
    Node(Box<SyntaxTree>, Box<SyntaxTree>),
}

impl SyntaxTree {
    pub fn leaf(word: impl Into<String>) -> Self {
        SyntaxTree::Leaf(word.into())
    }

    pub fn node(f: SyntaxTree, arg: SyntaxTree) -> Self {
        SyntaxTree::Node(Box::new(f), Box::new(arg))
    }

    pub fn leaves(&self) -> Vec<&str> {
        match self {
            SyntaxTree::Leaf(w) => vec![w.as_str()],
            SyntaxTree::Node(f, a) => {
                let mut out = f.leaves();
                out.extend(a.leaves());
                out
            }
        }
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxTree::Leaf(w) => f.write_str(w),
            SyntaxTree::Node(fun, arg) => write!(f, "(app {fun} {arg})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("tree syntax error at offset {offset}: {message}")]
pub struct TreeParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses `(app (app love theBrits) France)`; a bare word is a leaf.
pub fn parse_tree(text: &str) -> Result<SyntaxTree, TreeParseError> {
    let toks = tokenize(text);
    let mut pos = 0;
    let tree = parse_node(&toks, &mut pos, text.len())?;
    match toks.get(pos) {
        None => Ok(tree),
        Some((off, tok)) => Err(TreeParseError { offset: *off, message: format!("trailing `{tok}`") }),
    }
}

fn tokenize(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        let boundary = c.is_whitespace() || c == '(' || c == ')';
        if boundary {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
            if !c.is_whitespace() {
                out.push((i, &text[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

fn parse_node(toks: &[(usize, &str)], pos: &mut usize, end: usize) -> Result<SyntaxTree, TreeParseError> {
    let Some(&(off, tok)) = toks.get(*pos) else {
        return Err(TreeParseError { offset: end, message: "unexpected end of input".into() });
    };
    *pos += 1;
    match tok {
        "(" => {
            match toks.get(*pos) {
                Some((_, "app")) => *pos += 1,
                Some((o, other)) => {
                    return Err(TreeParseError { offset: *o, message: format!("expected `app`, found `{other}`") });
                }
                None => return Err(TreeParseError { offset: end, message: "unexpected end of input".into() }),
            }
            let f = parse_node(toks, pos, end)?;
            let a = parse_node(toks, pos, end)?;
            match toks.get(*pos) {
                Some((_, ")")) => {
                    *pos += 1;
                    Ok(SyntaxTree::node(f, a))
                }
                Some((o, other)) => Err(TreeParseError { offset: *o, message: format!("expected `)`, found `{other}`") }),
                None => Err(TreeParseError { offset: end, message: "missing `)`".into() }),
            }
        }
        ")" => Err(TreeParseError { offset: off, message: "unexpected `)`".into() }),
        word => Ok(SyntaxTree::leaf(word)),
    }
}
