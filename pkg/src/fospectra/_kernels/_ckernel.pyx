# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled formula evaluator and exhaustive structure enumerator.

Mirrors ``_pykernel.Kernel`` exactly; see ``program.py`` for the array layout.
"""

import numpy as np

cdef enum:
    T_VAR = 1
    T_CONST = 2
    T_APP = 3
    T_INV = 4
    F_UNARY = 10
    F_EQ = 11
    F_DEF = 12
    F_NOT = 13
    F_AND = 14
    F_OR = 15
    F_IMP = 16
    F_IFF = 17
    F_EX = 18
    F_ALL = 19

OPCODES = {
    "T_VAR": T_VAR, "T_CONST": T_CONST, "T_APP": T_APP, "T_INV": T_INV,
    "F_UNARY": F_UNARY, "F_EQ": F_EQ, "F_DEF": F_DEF, "F_NOT": F_NOT,
    "F_AND": F_AND, "F_OR": F_OR, "F_IMP": F_IMP, "F_IFF": F_IFF,
    "F_EX": F_EX, "F_ALL": F_ALL,
}


cdef class Kernel:
    cdef int[::1] t_op, t_a, t_b, f_op, f_a, f_b, f_c, kids, env, consts
    cdef int[:, ::1] fwd, inv
    cdef unsigned char[:, ::1] un
    cdef int n
    cdef object roots

    def __init__(self, prog):
        self.t_op = np.ascontiguousarray(prog.t_op, dtype=np.int32)
        self.t_a = np.ascontiguousarray(prog.t_a, dtype=np.int32)
        self.t_b = np.ascontiguousarray(prog.t_b, dtype=np.int32)
        self.f_op = np.ascontiguousarray(prog.f_op, dtype=np.int32)
        self.f_a = np.ascontiguousarray(prog.f_a, dtype=np.int32)
        self.f_b = np.ascontiguousarray(prog.f_b, dtype=np.int32)
        self.f_c = np.ascontiguousarray(prog.f_c, dtype=np.int32)
        self.kids = np.ascontiguousarray(prog.kids, dtype=np.int32)
        self.env = np.zeros(prog.nslots, dtype=np.int32)
        self.roots = tuple(prog.roots)
        self.n = 0

    def set_structure(self, int n, fwd, inv, un, consts):
        self.n = n
        self.fwd = np.ascontiguousarray(fwd, dtype=np.int32)
        self.inv = np.ascontiguousarray(inv, dtype=np.int32)
        self.un = np.ascontiguousarray(un, dtype=np.uint8)
        self.consts = np.ascontiguousarray(consts, dtype=np.int32)

    cdef int term(self, int t) noexcept nogil:
        cdef int op = self.t_op[t]
        cdef int v
        if op == T_VAR:
            return self.env[self.t_a[t]]
        if op == T_CONST:
            return self.consts[self.t_a[t]]
        v = self.term(self.t_b[t])
        if v == 0:
            return 0
        if op == T_APP:
            return self.fwd[self.t_a[t], v]
        return self.inv[self.t_a[t], v]

    cdef bint form(self, int f) noexcept nogil:
        cdef int op = self.f_op[f]
        cdef int a, b, i, end, slot, body, x
        if op == F_UNARY:
            a = self.term(self.f_b[f])
            return a != 0 and self.un[self.f_a[f], a] != 0
        if op == F_EQ:
            a = self.term(self.f_a[f])
            if a == 0:
                return False
            return a == self.term(self.f_b[f])
        if op == F_DEF:
            return self.term(self.f_a[f]) != 0
        if op == F_NOT:
            return not self.form(self.f_a[f])
        if op == F_AND:
            end = self.f_b[f] + self.f_c[f]
            for i in range(self.f_b[f], end):
                if not self.form(self.kids[i]):
                    return False
            return True
        if op == F_OR:
            end = self.f_b[f] + self.f_c[f]
            for i in range(self.f_b[f], end):
                if self.form(self.kids[i]):
                    return True
            return False
        if op == F_IMP:
            if not self.form(self.f_a[f]):
                return True
            return self.form(self.f_b[f])
        if op == F_IFF:
            return self.form(self.f_a[f]) == self.form(self.f_b[f])
        slot = self.f_a[f]
        body = self.f_b[f]
        if op == F_EX:
            for x in range(1, self.n + 1):
                self.env[slot] = x
                if self.form(body):
                    return True
            return False
        # F_ALL
        for x in range(1, self.n + 1):
            self.env[slot] = x
            if not self.form(body):
                return False
        return True

    def evaluate(self, int k, env_values=()):
        """Truth value of root ``k`` under the free-variable values given."""
        cdef int i
        for i, v in enumerate(env_values):
            self.env[i] = v
        return bool(self.form(self.roots[k]))

    def enumerate(self, int n, level_kind, level_sym, pif_fwd, pif_inv, unary_table,
                  check_start, check_roots, long long limit=0, long long stop=0):
        """Run through every assignment of the levels, counting those that pass
        all checks; see ``_pykernel.Kernel.enumerate`` for the contract."""
        cdef int[::1] kind = np.ascontiguousarray(level_kind, dtype=np.int32)
        cdef int[::1] sym = np.ascontiguousarray(level_sym, dtype=np.int32)
        cdef int[:, ::1] pf = np.ascontiguousarray(pif_fwd, dtype=np.int32)
        cdef int[:, ::1] pi = np.ascontiguousarray(pif_inv, dtype=np.int32)
        cdef unsigned char[:, ::1] ut = np.ascontiguousarray(unary_table, dtype=np.uint8)
        cdef int[::1] cstart = np.ascontiguousarray(check_start, dtype=np.int32)
        cdef int[::1] croots = np.ascontiguousarray(check_roots, dtype=np.int32)
        cdef int L = kind.shape[0]
        cdef long long count = 0, nodes = 0
        cdef int lvl, c, j, x, s
        cdef bint ok
        cdef int[::1] size = np.zeros(max(L, 1), dtype=np.int32)
        cdef int[::1] idx = np.zeros(max(L, 1), dtype=np.int32)
        models = []
        if L == 0:
            raise ValueError("enumerate needs at least one level")
        self.n = n
        for lvl in range(L):
            if kind[lvl] == 0:
                size[lvl] = pf.shape[0]
            elif kind[lvl] == 1:
                size[lvl] = ut.shape[0]
            else:
                size[lvl] = n
        lvl = 0
        idx[0] = -1
        while lvl >= 0:
            idx[lvl] += 1
            c = idx[lvl]
            if c >= size[lvl]:
                lvl -= 1
                continue
            s = sym[lvl]
            if kind[lvl] == 0:
                for x in range(n + 1):
                    self.fwd[s, x] = pf[c, x]
                    self.inv[s, x] = pi[c, x]
            elif kind[lvl] == 1:
                for x in range(n + 1):
                    self.un[s, x] = ut[c, x]
            else:
                self.consts[s] = c + 1
            nodes += 1
            ok = True
            for j in range(cstart[lvl], cstart[lvl + 1]):
                if not self.form(croots[j]):
                    ok = False
                    break
            if not ok:
                continue
            if lvl == L - 1:
                count += 1
                if limit < 0 or count <= limit:
                    models.append(tuple([idx[j] for j in range(L)]))
                if stop > 0 and count >= stop:
                    break
                continue
            lvl += 1
            idx[lvl] = -1
        return count, models, nodes
