"""Measure and verify the golfed knot templates before freezing them in."""
import time
from rlab.ips.ast import (
    Add, Comp, Const, Div, Eq, Freeze, Fst, IfZ, Le, Mod, Monus, Mu, Mul,
    OracleQuery, Pair, PrimRec, Proj, Snd, Um, UmBounded, decode, encode,
)
from rlab.ips.machine import Evaluation, evaluate
from rlab.ips.transforms import rec_fm, smn
from rlab.ips.gadgets import never, POW2
from rlab.coding import pair_encode

FUEL = 100_000

IDENT = encode(Proj(1, 1))          # 25, in K
NEVER = encode(never())             # divergent everywhere
SUCC = encode(Add(Proj(1, 1), Const(1)))
CONST1 = encode(Const(1))

def bits(n):
    return n.bit_length()

def run(e, args, fuel=FUEL, oracle=None):
    out = evaluate(e, tuple(args), oracle=oracle, fuel=fuel)
    return ("halt", out.value) if out else "fuel-out"

# ---- 1. golfed chain-1: (d, z) -> stop iff z == d or phi_d(z) halts ----
CHAIN1 = Mu(Monus(Eq(Proj(3, 3), Proj(3, 2)),
                  UmBounded((Proj(3, 2), Proj(3, 1), Proj(3, 3)))))
c1 = encode(CHAIN1)
print("CHAIN1 bits:", bits(c1))
# z == d: halt immediately
print("  c1(7,7):", run(c1, (7, 7)))
# phi_IDENT(5) halts -> stop
print("  c1(IDENT,5):", run(c1, (IDENT, 5)))
# phi_NEVER(5) diverges, 5 != NEVER -> diverge
print("  c1(NEVER,5):", run(c1, (NEVER, 5), fuel=3000))

# ---- 2. chain-2 (d, v, z): halt iff z == v or phi_d(z) halts ----
CHAIN2 = Mu(Monus(Eq(Proj(4, 4), Proj(4, 3)),
                  UmBounded((Proj(4, 2), Proj(4, 1), Proj(4, 4)))))
c2 = encode(CHAIN2)
print("CHAIN2 bits:", bits(c2))
print("  c2(NEVER,9,9):", run(c2, (NEVER, 9, 9)))
print("  c2(IDENT,9,3):", run(c2, (IDENT, 9, 3)))
print("  c2(NEVER,9,3):", run(c2, (NEVER, 9, 3), fuel=3000))

# ---- 3. MB knot: T over (self, t, f, z) ----
# WAITK: diverge unless z in K (z self-application halts)
WAITK = Mu(Le(Const(1), UmBounded((Proj(5, 4), Proj(5, 1), Proj(5, 4)))))
# wait: inside Comp arg position, context is the MASTER width-4 args
# (self, t, f, z); Mu adds the counter in front -> width 5, z is position 5.
WAITK = Mu(Le(Const(1), UmBounded((Proj(5, 5), Proj(5, 1), Proj(5, 5)))))
EQCHECK = Mu(Eq(Proj(4, 4), Proj(4, 3)))   # head over (w, m, t): stop iff t==m
MEXPR_MB = Um((Proj(4, 3), Proj(4, 1)))    # phi_f(self)
MB_T = Comp(EQCHECK, (WAITK, MEXPR_MB, Proj(4, 2)))
mb_t = encode(MB_T)
print("MB_T bits:", bits(mb_t))

t0 = time.time()
P = rec_fm(mb_t, (IDENT, IDENT))   # f = identity, z = IDENT (in K)
print("MB P bits:", bits(P), "rec_fm %.2fs" % (time.time() - t0))
# phi_f(P) = P for f = identity; so W_P should be {P}... but P is huge;
# probing t=P means Eq on huge ints - fine, but UmBounded budget t... no:
# WAITK budgets z-self-app by the Mu counter, independent of t. t only
# feeds EQCHECK. Comp strict-evaluates MEXPR = phi_IDENT(P) = P. Then
# EQCHECK diverges unless t == m = P. Probe t=0 (diverge), t=P (halt).
t0 = time.time()
print("  P(0):", run(P, (0,), fuel=50_000), "%.2fs" % (time.time() - t0))
t0 = time.time()
print("  P(P):", run(P, (P,), fuel=50_000), "%.2fs" % (time.time() - t0))
# z not in K: diverge for every t
P2 = rec_fm(mb_t, (IDENT, NEVER))
t0 = time.time()
print("  P2(P2):", run(P2, (P2,), fuel=50_000), "%.2fs" % (time.time() - t0))

# with a small f: f = const CONST1-index program? f must be total with
# values being indices. f = succ: phi_succ(P) = P+1, W_P = {P+1}.
P3 = rec_fm(mb_t, (SUCC, IDENT))
print("  P3 bits:", bits(P3))
print("  P3(P3+1):", run(P3, (P3 + 1,), fuel=50_000))
print("  P3(P3):", run(P3, (P3,), fuel=50_000))

# ---- 4. DSEU knot: T over (self, t, f, e) ----
# CORE2 head over (m, e) -> with Mu counter (w, m, e) width 3:
# stop iff UmB((e, w, m)) == 1, i.e. phi_e(m) halts with value 0.
CORE2 = Mu(Eq(UmBounded((Proj(3, 3), Proj(3, 1), Proj(3, 2))), Const(1)))
MEXPR_D = Fst(Snd(Um((Proj(4, 3), Proj(4, 1)))))    # first member of list phi_f(self)
DSEU_T = Comp(CORE2, (MEXPR_D, Proj(4, 4)))
dseu_t = encode(DSEU_T)
print("DSEU_T bits:", bits(dseu_t))

# list encoding: (n, (v1, (v2, ... 0))) -> singleton {m}: pair(1, pair(m, 0))
LIST1 = encode(Pair(Const(1), Pair(Proj(1, 1), Const(0))))  # f(x) = [x]
# e = const-0 program: phi_e(m) = 0 always -> h(e) in K, domain = N
PZERO = encode(Const(0))
Pd = rec_fm(dseu_t, (LIST1, PZERO))
print("  Pd bits:", bits(Pd))
print("  Pd(17):", run(Pd, (17,), fuel=50_000))
# e = const-1: phi_e(m) = 1 -> diverge
PONE = encode(Const(1))
Pd2 = rec_fm(dseu_t, (LIST1, PONE))
print("  Pd2(17):", run(Pd2, (17,), fuel=50_000))
# e = NEVER: diverge
Pd3 = rec_fm(dseu_t, (LIST1, NEVER))
print("  Pd3(17):", run(Pd3, (17,), fuel=50_000))

# ---- 5. QCDC knot: like MB but MEXPR = first member of phi_f(self) ----
QCDC_T = Comp(EQCHECK, (WAITK, MEXPR_D, Proj(4, 2)))
qcdc_t = encode(QCDC_T)
print("QCDC_T bits:", bits(qcdc_t))
Pq = rec_fm(qcdc_t, (LIST1, IDENT))   # F(Pq) = {Pq}; z=IDENT in K
print("  Pq bits:", bits(Pq))
print("  Pq(Pq):", run(Pq, (Pq,), fuel=50_000))
print("  Pq(0):", run(Pq, (0,), fuel=50_000))
Pq2 = rec_fm(qcdc_t, (LIST1, NEVER))
print("  Pq2(Pq2):", run(Pq2, (Pq2,), fuel=50_000))

# ---- 6. WEU in Mu-form: (f, e, x) with phi_e total 0/1 ----
# current semantics (classes.py): u on (f, e, x) halts iff phi_e(phi_f(x)) = 0
WEU = Mu(Um((Proj(4, 3), Um((Proj(4, 2), Proj(4, 4))))))
weu = encode(WEU)
print("WEU bits:", bits(weu))
# f = identity, e = const0: halts everywhere
print("  weu(IDENT,PZERO,5):", run(weu, (IDENT, PZERO, 5)))
print("  weu(IDENT,PONE,5):", run(weu, (IDENT, PONE, 5), fuel=3000))
print("  weu(IDENT,IDENT,0):", run(weu, (IDENT, IDENT, 0)))
print("  weu(IDENT,IDENT,3):", run(weu, (IDENT, IDENT, 3), fuel=3000))

# ---- 7. WQC fpf core in Mu-form: (f, e, x) ----
# halt iff bit x of phi_f(e) is 1 AND oracle(x) = 0
BIT = Mod(Div(Um((Proj(4, 2), Proj(4, 3))), Comp(POW2, (Proj(4, 4),))), Const(2))
WQC = Mu(Add(Monus(Const(1), BIT), Comp(OracleQuery(), (Proj(4, 4),))))
wqc = encode(WQC)
print("WQC bits:", bits(wqc))
# f(e) = 0b1010 = 10 -> bits set at x=1,3. oracle empty -> halt iff x in {1,3}
MASK10 = encode(Const(10))
print("  wqc x=1:", run(wqc, (MASK10, 0, 1)))
print("  wqc x=2:", run(wqc, (MASK10, 0, 2), fuel=3000))
print("  wqc x=3 oracle{3}:", run(wqc, (MASK10, 0, 3), fuel=3000,
                                    oracle=frozenset({3})))

# ---- 8. pc_inline: arity-1 race program with constant indices ----
def pc_inline(e1: int, e2: int) -> int:
    stage = Mu(Monus(Const(1),
                     Add(UmBounded((Const(e1), Proj(2, 1), Proj(2, 2))),
                         UmBounded((Const(e2), Proj(2, 1), Proj(2, 2))))))
    answer = Eq(UmBounded((Const(e1), Proj(2, 1), Proj(2, 2))), Const(0))
    return encode(Comp(answer, (stage, Proj(1, 1))))

pci = pc_inline(IDENT, NEVER)
print("pc_inline(IDENT,NEVER) bits:", bits(pci))
print("  pci(4):", run(pci, (4,)))        # IDENT halts -> answer != 0 -> Eq gives 1? wait
# UmB((e1, w, x)): phi_IDENT(x) halts -> 1+x; Eq(1+x, 0): 0 iff 1+x == 0 i.e. never for halting
# hmm: answer semantics in current code _PC_ANSWER: Eq(UmB(...), Const(0)) ->
# equals 1 iff UmB != 0?? Eq gives 0-means-yes... check ast Eq semantics.
print("  (Eq is 0-means-equal per ast)")

pci2 = pc_inline(NEVER, IDENT)
print("  pci2(4):", run(pci2, (4,)))

# big-index effect on size:
big = smn(encode(Comp(Proj(1, 1), (Proj(1, 1),))), ())
print("pc_inline w/ 150k-bit index:", bits(pc_inline(mb_t, NEVER)))

# ---- 9. current big templates: measure only ----
import rlab.classes as C
for name in ("_DEFG_IN_T", "_FPF_CORE_T", "_SDW_BODY_T", "_WTT_FPF_IN_T",
              "_KN_T", "_MB_IN_T", "_WEU_IN_T", "_QCDC_IN_T", "_DSEU_IN_T",
              "_ARS_T", "_WQC_FPF_IN_T", "_CHAIN1_T", "_CHAIN2_T"):
    v = getattr(C, name, None)
    if v is not None:
        print(name, bits(v))
