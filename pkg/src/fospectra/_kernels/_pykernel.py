"""Pure-Python twin of the compiled kernel.

Each program node becomes a closure; the structure lives in plain lists that
the closures index, so the enumerator can swap rows in place.
"""

from __future__ import annotations

from . import program as P


class Kernel:
    def __init__(self, prog: P.Program):
        self.prog = prog
        self.env = [0] * prog.nslots
        self.n = 0
        self.fwd: list[list[int]] = []
        self.inv: list[list[int]] = []
        self.un: list[list[int]] = []
        self.consts: list[int] = []
        t_op, t_a, t_b = prog.t_op.tolist(), prog.t_a.tolist(), prog.t_b.tolist()
        f_op, f_a, f_b, f_c = (prog.f_op.tolist(), prog.f_a.tolist(),
                               prog.f_b.tolist(), prog.f_c.tolist())
        kids = prog.kids.tolist()
        self._terms: list = []
        for i in range(len(t_op)):
            self._terms.append(self._make_term(t_op[i], t_a[i], t_b[i]))
        self._forms: list = []
        for i in range(len(f_op)):
            self._forms.append(self._make_form(f_op[i], f_a[i], f_b[i], f_c[i], kids))

    # terms and subformulas always precede their parents, so children exist
    def _make_term(self, op, a, b):
        env, terms = self.env, self._terms
        if op == P.T_VAR:
            return lambda: env[a]
        if op == P.T_CONST:
            return lambda: self.consts[a]
        child = terms[b]
        table = self.fwd if op == P.T_APP else self.inv

        def apply():
            v = child()
            return table[a][v] if v else 0
        return apply

    def _make_form(self, op, a, b, c, kids):
        terms, forms, env = self._terms, self._forms, self.env
        if op == P.F_UNARY:
            t = terms[b]

            def unary():
                v = t()
                return bool(v) and bool(self.un[a][v])
            return unary
        if op == P.F_EQ:
            s, t = terms[a], terms[b]

            def eq():
                v = s()
                return v != 0 and v == t()
            return eq
        if op == P.F_DEF:
            t = terms[a]
            return lambda: t() != 0
        if op == P.F_NOT:
            body = forms[a]
            return lambda: not body()
        if op == P.F_AND:
            subs = [forms[k] for k in kids[b:b + c]]
            return lambda: all(f() for f in subs)
        if op == P.F_OR:
            subs = [forms[k] for k in kids[b:b + c]]
            return lambda: any(f() for f in subs)
        if op == P.F_IMP:
            left, right = forms[a], forms[b]
            return lambda: (not left()) or right()
        if op == P.F_IFF:
            left, right = forms[a], forms[b]
            return lambda: left() == right()
        body = forms[b]
        if op == P.F_EX:
            def ex():
                for x in range(1, self.n + 1):
                    env[a] = x
                    if body():
                        return True
                return False
            return ex

        def all_():
            for x in range(1, self.n + 1):
                env[a] = x
                if not body():
                    return False
            return True
        return all_

    def set_structure(self, n, fwd, inv, un, consts):
        self.n = n
        # mutate in place: closures hold references to these lists
        self.fwd[:] = [list(map(int, row)) for row in fwd]
        self.inv[:] = [list(map(int, row)) for row in inv]
        self.un[:] = [list(map(int, row)) for row in un]
        self.consts[:] = [int(c) for c in consts]

    def evaluate(self, k, env_values=()):
        for i, v in enumerate(env_values):
            self.env[i] = int(v)
        return bool(self._forms[self.prog.roots[k]]())

    def enumerate(self, n, level_kind, level_sym, pif_fwd, pif_inv, unary_table,
                  check_start, check_roots, limit=0, stop=0):
        """Visit every assignment of the levels in odometer order.

        Level ``i`` assigns PIF (kind 0), unary relation (kind 1) or constant
        (kind 2) number ``level_sym[i]`` from its candidate table.  After each
        assignment the roots ``check_roots[check_start[i]:check_start[i+1]]``
        are evaluated and the subtree is skipped if one fails.  Returns
        ``(count, models, nodes)`` where ``models`` holds the candidate index
        tuples of the first ``limit`` passing assignments (all if ``limit < 0``)
        and ``stop > 0`` ends the walk after that many models.
        """
        kind = [int(k) for k in level_kind]
        sym = [int(s) for s in level_sym]
        pf = [list(map(int, r)) for r in pif_fwd]
        pi = [list(map(int, r)) for r in pif_inv]
        ut = [list(map(int, r)) for r in unary_table]
        cstart = [int(s) for s in check_start]
        checks = [self._forms[int(r)] for r in check_roots]
        L = len(kind)
        if L == 0:
            raise ValueError("enumerate needs at least one level")
        self.n = n
        sizes = [len(pf) if k == 0 else len(ut) if k == 1 else n for k in kind]
        level_checks = [checks[cstart[i]:cstart[i + 1]] for i in range(L)]
        idx = [-1] * L
        count = nodes = 0
        models = []
        lvl = 0
        while lvl >= 0:
            idx[lvl] += 1
            c = idx[lvl]
            if c >= sizes[lvl]:
                lvl -= 1
                continue
            s = sym[lvl]
            if kind[lvl] == 0:
                self.fwd[s] = pf[c]
                self.inv[s] = pi[c]
            elif kind[lvl] == 1:
                self.un[s] = ut[c]
            else:
                self.consts[s] = c + 1
            nodes += 1
            if not all(f() for f in level_checks[lvl]):
                continue
            if lvl == L - 1:
                count += 1
                if limit < 0 or count <= limit:
                    models.append(tuple(idx))
                if stop > 0 and count >= stop:
                    break
                continue
            lvl += 1
            idx[lvl] = -1
        return count, models, nodes
