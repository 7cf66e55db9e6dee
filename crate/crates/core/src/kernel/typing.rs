//! Type inference and well-formedness checking.

use super::subst::subst_type;
use super::{Context, KernelError, TermExpr, Theory, TypeExpr, Verdict, DEFAULT_FUEL};

impl Theory {
    /// Infers the type of `t` in `ctx`, validating argument compatibility at
    /// every application. The result is the instantiation of the operation's
    /// declared result (or the variable's telescope entry) and is well-formed
    /// in `ctx` whenever the inputs are.
    pub fn infer_type(&self, ctx: &Context, t: &TermExpr) -> Result<TypeExpr, KernelError> {
        match t {
            TermExpr::Var(i) => {
                if *i >= ctx.len() {
                    return Err(KernelError::VarOutOfRange { index: *i, len: ctx.len() });
                }
                Ok(ctx.entry(*i).clone())
            }
            TermExpr::App(op_id, args) => {
                let op = self.ops.get(op_id.0).ok_or_else(|| KernelError::UnknownSymbol {
                    name: format!("op#{}", op_id.0),
                })?;
                if args.len() != op.telescope.len() {
                    return Err(KernelError::ArityMismatch {
                        symbol: op.name.clone(),
                        expected: op.telescope.len(),
                        actual: args.len(),
                    });
                }
                for (j, arg) in args.iter().enumerate() {
                    let expected = subst_type(op.telescope.entry(j), &args[..j]);
                    let actual = self.infer_type(ctx, arg)?;
                    self.require_types_equal(ctx, &expected, &actual)?;
                }
                Ok(subst_type(&op.result, args))
            }
        }
    }

    /// Type inference without argument validation, for terms already known to
    /// be well-formed (rewriting internals).
    pub(crate) fn infer_type_loose(&self, ctx: &Context, t: &TermExpr) -> Option<TypeExpr> {
        match t {
            TermExpr::Var(i) => ctx.entries().get(*i).cloned(),
            TermExpr::App(op_id, args) => {
                let op = self.ops.get(op_id.0)?;
                if args.len() != op.telescope.len() {
                    return None;
                }
                Some(subst_type(&op.result, args))
            }
        }
    }

    /// Checks that `ty` is a well-formed type in `ctx`: the sort exists, the
    /// arity matches, and each argument checks against the sort's telescope
    /// entry instantiated by the earlier arguments.
    pub fn check_type(&self, ctx: &Context, ty: &TypeExpr) -> Result<(), KernelError> {
        let sort = self.sorts.get(ty.sort.0).ok_or_else(|| KernelError::UnknownSymbol {
            name: format!("sort#{}", ty.sort.0),
        })?;
        if ty.args.len() != sort.telescope.len() {
            return Err(KernelError::ArityMismatch {
                symbol: sort.name.clone(),
                expected: sort.telescope.len(),
                actual: ty.args.len(),
            });
        }
        for (j, arg) in ty.args.iter().enumerate() {
            let expected = subst_type(sort.telescope.entry(j), &ty.args[..j]);
            let actual = self.infer_type(ctx, arg)?;
            self.require_types_equal(ctx, &expected, &actual)?;
        }
        Ok(())
    }

    /// Checks the prefix property: every entry is a well-formed type over the
    /// entries before it.
    pub fn wf_context(&self, ctx: &Context) -> Result<(), KernelError> {
        for i in 0..ctx.len() {
            let prefix = ctx.prefix(i);
            self.check_type(&prefix, ctx.entry(i)).map_err(|cause| {
                KernelError::IllFormedTelescope { position: i, cause: Box::new(cause) }
            })?;
        }
        Ok(())
    }

    /// Checks `t : ty` in `ctx` by inference followed by an equality check.
    pub fn check_term(
        &self,
        ctx: &Context,
        t: &TermExpr,
        ty: &TypeExpr,
    ) -> Result<(), KernelError> {
        let actual = self.infer_type(ctx, t)?;
        self.require_types_equal(ctx, ty, &actual)
    }

    fn require_types_equal(
        &self,
        ctx: &Context,
        expected: &TypeExpr,
        actual: &TypeExpr,
    ) -> Result<(), KernelError> {
        match self.types_equal(ctx, expected, actual, DEFAULT_FUEL) {
            Verdict::Yes => Ok(()),
            Verdict::No => Err(KernelError::TypeMismatch {
                expected: self.show_type(expected),
                actual: self.show_type(actual),
            }),
            Verdict::Unknown => Err(KernelError::EqualityUndecided {
                lhs: self.show_type(expected),
                rhs: self.show_type(actual),
            }),
        }
    }
}
