//! Tokenizer for the sequence DSL. Tracks byte offsets (the source is
//! required to be ASCII, so byte and character offsets coincide).

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Number(f64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    Colon,
    Comma,
    Equals,
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = source.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if !b.is_ascii() {
            return Err(ParseError {
                position: i,
                message: "non-ASCII byte in source".into(),
            });
        }
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let pos = i;
        let tok = match b {
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b';' => {
                i += 1;
                Tok::Semi
            }
            b':' => {
                i += 1;
                Tok::Colon
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'=' => {
                i += 1;
                Tok::Equals
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mark = i;
                    i += 1;
                    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                        i += 1;
                    }
                    if i < bytes.len() && bytes[i].is_ascii_digit() {
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    } else {
                        // not an exponent after all ("2e" then something else)
                        i = mark;
                    }
                }
                let text = &source[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError {
                    position: start,
                    message: format!("malformed number literal {text:?}"),
                })?;
                if !value.is_finite() {
                    return Err(ParseError {
                        position: start,
                        message: format!("number literal out of range: {text:?}"),
                    });
                }
                Tok::Number(value)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(source[start..i].to_string())
            }
            _ => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character {:?}", b as char),
                })
            }
        };
        toks.push(Token { tok, pos });
    }
    toks.push(Token {
        tok: Tok::Eof,
        pos: bytes.len(),
    });
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_numbers_and_symbols() {
        let toks = tokenize("1.5e-3 + alpha").unwrap();
        assert_eq!(toks[0].tok, Tok::Number(1.5e-3));
        assert_eq!(toks[1].tok, Tok::Plus);
        assert_eq!(toks[2].tok, Tok::Ident("alpha".into()));
        assert_eq!(toks[3].tok, Tok::Eof);
    }

    #[test]
    fn lone_dot_is_an_error() {
        let err = tokenize("1 + .").unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn rejects_non_ascii() {
        let err = tokenize("1 + \u{03b1}").unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn trailing_e_is_not_an_exponent() {
        // "2e" followed by ";" lexes as number 2, ident e? No: "2e" has no
        // digits after e, so the e is rolled back into an ident.
        let toks = tokenize("2e;").unwrap();
        assert_eq!(toks[0].tok, Tok::Number(2.0));
        assert_eq!(toks[1].tok, Tok::Ident("e".into()));
        assert_eq!(toks[2].tok, Tok::Semi);
    }
}
