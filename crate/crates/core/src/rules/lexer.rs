use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    If,
    Then,
    Else,
    Set,
    Switch,
    Case,
    Default,
    While,
    Do,
    End,
    For,
    To,
    And,
    Or,
    Not,
}

impl Keyword {
    pub fn from_word(word: &str) -> Option<Self> {
        const TABLE: [(&str, Keyword); 15] = [
            ("IF", Keyword::If),
            ("THEN", Keyword::Then),
            ("ELSE", Keyword::Else),
            ("SET", Keyword::Set),
            ("SWITCH", Keyword::Switch),
            ("CASE", Keyword::Case),
            ("DEFAULT", Keyword::Default),
            ("WHILE", Keyword::While),
            ("DO", Keyword::Do),
            ("END", Keyword::End),
            ("FOR", Keyword::For),
            ("TO", Keyword::To),
            ("AND", Keyword::And),
            ("OR", Keyword::Or),
            ("NOT", Keyword::Not),
        ];
        TABLE
            .iter()
            .find(|(w, _)| w.eq_ignore_ascii_case(word))
            .map(|&(_, k)| k)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::If => "IF",
            Keyword::Then => "THEN",
            Keyword::Else => "ELSE",
            Keyword::Set => "SET",
            Keyword::Switch => "SWITCH",
            Keyword::Case => "CASE",
            Keyword::Default => "DEFAULT",
            Keyword::While => "WHILE",
            Keyword::Do => "DO",
            Keyword::End => "END",
            Keyword::For => "FOR",
            Keyword::To => "TO",
            Keyword::And => "AND",
            Keyword::Or => "OR",
            Keyword::Not => "NOT",
        }
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Keyword(Keyword),
    Identifier,
    Number,
    Operator,
    Punctuation,
    BooleanLiteral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// The lexeme as written in the source.
    pub text: String,
    pub line: u32,
    pub column: u32,
}

impl Token {
    pub fn is_keyword(&self, kw: Keyword) -> bool {
        self.kind == TokenKind::Keyword(kw)
    }

    /// Operator or punctuation with exactly this text.
    pub fn is_symbol(&self, sym: &str) -> bool {
        matches!(self.kind, TokenKind::Operator | TokenKind::Punctuation) && self.text == sym
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unexpected character {found:?} at line {line}, column {column}")]
pub struct LexError {
    pub found: char,
    pub line: u32,
    pub column: u32,
}

/// Splits rule-language source into tokens. Positions are 1-based and count
/// characters, not bytes.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0usize, 1u32, 1u32);

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }

        let start = i;
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if let Some(kw) = Keyword::from_word(&word) {
                TokenKind::Keyword(kw)
            } else if word.eq_ignore_ascii_case("TRUE") || word.eq_ignore_ascii_case("FALSE") {
                TokenKind::BooleanLiteral
            } else {
                TokenKind::Identifier
            }
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            TokenKind::Number
        } else {
            let next = chars.get(i + 1).copied();
            match (c, next) {
                ('<', Some('=' | '>')) | ('>', Some('=')) => {
                    i += 2;
                    TokenKind::Operator
                }
                ('<' | '>' | '=' | '+' | '-' | '*' | '/', _) => {
                    i += 1;
                    TokenKind::Operator
                }
                ('(' | ')' | '{' | '}' | ':' | ';' | ',', _) => {
                    i += 1;
                    TokenKind::Punctuation
                }
                _ => {
                    return Err(LexError {
                        found: c,
                        line,
                        column,
                    })
                }
            }
        };

        tokens.push(Token {
            kind,
            text: chars[start..i].iter().collect(),
            line,
            column,
        });
        column += (i - start) as u32;
    }

    Ok(tokens)
}
