"""Round 2: single-Mu knots for MB/QCDC, arslanov pieces, pc_inline."""
import time
from rlab.ips.ast import (
    Add, Comp, Const, Div, Eq, Freeze, Fst, IfZ, Le, Mod, Monus, Mu, Mul,
    OracleQuery, Pair, PrimRec, Proj, Snd, Um, UmBounded, decode, encode,
)
from rlab.ips.machine import evaluate
from rlab.ips.transforms import rec_fm, smn
from rlab.ips.gadgets import never, POW2

FUEL = 50_000
IDENT = encode(Proj(1, 1))
NEVER = encode(never())
SUCC = encode(Add(Proj(1, 1), Const(1)))

def bits(n): return n.bit_length()

def run(e, args, fuel=FUEL, oracle=None):
    t0 = time.time()
    out = evaluate(e, tuple(args), oracle=oracle, fuel=fuel)
    r = ("halt", out.value if out.value.bit_length() < 40 else "<big>") \
        if out else "fuel-out"
    return r, "%.2fs" % (time.time() - t0)

def p(*a):
    print(*a, flush=True)

# ---- MB single-Mu (Add shape) ----
MB_T = Mu(Add(Monus(Const(1), UmBounded((Proj(5, 5), Proj(5, 1), Proj(5, 5)))),
              Eq(Um((Proj(5, 4), Proj(5, 2))), Proj(5, 3))))
mb_t = encode(MB_T)
p("MB_T bits:", bits(mb_t))
P = rec_fm(mb_t, (IDENT, IDENT))
p("  P bits:", bits(P))
p("  P(0):", *run(P, (0,)))
p("  P(P):", *run(P, (P,)))
P2 = rec_fm(mb_t, (IDENT, NEVER))
p("  P2(P2):", *run(P2, (P2,)))
P3 = rec_fm(mb_t, (SUCC, IDENT))
p("  P3(P3+1):", *run(P3, (P3 + 1,)))
p("  P3(P3):", *run(P3, (P3,)))

# ---- QCDC single-Mu, IfZ-lazy: pay the list cost only after z settles ----
QCDC_T = Mu(IfZ(Monus(Const(1), UmBounded((Proj(5, 5), Proj(5, 1), Proj(5, 5)))),
                Eq(Um((Proj(5, 4), Proj(5, 2))),
                   Pair(Const(1), Pair(Proj(5, 3), Const(0)))),
                Const(1)))
qcdc_t = encode(QCDC_T)
p("QCDC_T bits:", bits(qcdc_t))
LIST1 = encode(Pair(Const(1), Pair(Proj(1, 1), Const(0))))
Pq = rec_fm(qcdc_t, (LIST1, IDENT))
p("  Pq bits:", bits(Pq))
p("  Pq(Pq):", *run(Pq, (Pq,)))
p("  Pq(0) fuel 2000:", *run(Pq, (0,), fuel=2000))
Pq2 = rec_fm(qcdc_t, (LIST1, NEVER))
p("  Pq2(Pq2):", *run(Pq2, (Pq2,), fuel=20_000))
