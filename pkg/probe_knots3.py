"""Round 3: pc_inline, WQC oracle form, arslanov knot."""
import time
from rlab.ips.ast import (
    Add, Comp, Const, Div, Eq, Freeze, Fst, IfZ, Le, Mod, Monus, Mu, Mul,
    OracleQuery, Pair, PrimRec, Proj, Snd, Um, UmBounded, decode, encode,
)
from rlab.ips.machine import evaluate
from rlab.ips.transforms import rec_fm, smn
from rlab.ips.gadgets import never, POW2

IDENT = encode(Proj(1, 1))
NEVER = encode(never())
SUCC = encode(Add(Proj(1, 1), Const(1)))

def bits(n): return n.bit_length()

def run(e, args, fuel=50_000, oracle=None):
    t0 = time.time()
    out = evaluate(e, tuple(args), oracle=oracle, fuel=fuel)
    r = ("halt", out.value if out.value.bit_length() < 40 else "<big>") \
        if out else "fuel-out"
    return r, "%.2fs" % (time.time() - t0)

def p(*a):
    print(*a, flush=True)

# ---- pc_inline ----
def pc_inline(e1: int, e2: int) -> int:
    stage = Mu(Monus(Const(1),
                     Add(UmBounded((Const(e1), Proj(2, 1), Proj(2, 2))),
                         UmBounded((Const(e2), Proj(2, 1), Proj(2, 2))))))
    answer = Eq(UmBounded((Const(e1), Proj(2, 1), Proj(2, 2))), Const(0))
    return encode(Comp(answer, (stage, Proj(1, 1))))

pci = pc_inline(IDENT, NEVER)
p("pc_inline small bits:", bits(pci))
p("  pci(4):", *run(pci, (4,)))            # x in W_IDENT -> expect 1
pci2 = pc_inline(NEVER, IDENT)
p("  pci2(4):", *run(pci2, (4,)))          # x in W_e2 -> expect 0
p("  pci(4) both-div:", *run(pc_inline(NEVER, NEVER), (4,), fuel=2000))
BIG = encode(Mu(Add(Monus(Const(1), UmBounded((Proj(5, 5), Proj(5, 1),
                                               Proj(5, 5)))),
                    Eq(Um((Proj(5, 4), Proj(5, 2))), Proj(5, 3)))))
p("pc_inline big-first bits:", bits(pc_inline(BIG, NEVER)))
p("pc_inline big-second bits:", bits(pc_inline(NEVER, BIG)))

# ---- WQC fpf core ----
p("POW2 bits:", bits(encode(POW2)))
BIT = Mod(Div(Um((Proj(4, 2), Proj(4, 3))), Comp(POW2, (Proj(4, 4),))), Const(2))
WQC = Mu(Add(Monus(Const(1), BIT), Comp(OracleQuery(), (Proj(4, 4),))))
wqc = encode(WQC)
p("WQC bits:", bits(wqc))
MASK10 = encode(Const(10))
p("  wqc x=1:", *run(wqc, (MASK10, 0, 1)))
p("  wqc x=2:", *run(wqc, (MASK10, 0, 2), fuel=3000))
p("  wqc x=3 oracle{3}:", *run(wqc, (MASK10, 0, 3), fuel=3000,
                               oracle=frozenset({3}).__contains__))
p("  wqc x=1 oracle{1}:", *run(wqc, (MASK10, 0, 1), fuel=3000,
                               oracle=frozenset({1}).__contains__))

# ---- arslanov knot ----
def ars_sx(x: int):
    # settling stage of x's self-application; width-3 body (s, c, z)
    return Mu(Monus(Const(1), UmBounded((Const(x), Proj(3, 1), Const(x)))))

sx = ars_sx(IDENT)
p("SX(IDENT) bits:", bits(encode(sx)))
p("  sx:", *run(encode(sx), (0, 0)))

R_FAKE = encode(Const(SUCC))        # phi_r(s, P) = SUCC for the wiring test
GC = Um((Um((Const(R_FAKE), ars_sx(IDENT), Freeze((Proj(2, 1), Proj(2, 1))))),
         Proj(2, 2)))
gc = encode(GC)
p("ars GC bits:", bits(gc))
gx = smn(gc, (gc,))
p("ars gx bits:", bits(gx))
p("  gx(7):", *run(gx, (7,)))       # expect phi_SUCC(7) = 8

# divergent-sx variant: z never settles -> gx diverges everywhere
GC2 = Um((Um((Const(R_FAKE), ars_sx(NEVER), Freeze((Proj(2, 1), Proj(2, 1))))),
          Proj(2, 2)))
gx2 = smn(encode(GC2), (encode(GC2),))
p("  gx2(7):", *run(gx2, (7,), fuel=5000))
