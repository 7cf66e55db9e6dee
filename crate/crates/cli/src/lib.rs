//! Library surface of the gatlab CLI: parsers, printers, resolvers, command
//! implementations and the builtin corpus.

pub mod commands;
pub mod corpus;
pub mod diag;
pub mod lex;
pub mod parse;
pub mod print;
pub mod report;
pub mod resolve;
