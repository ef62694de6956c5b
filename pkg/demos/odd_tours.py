"""
Odd instances
=============

For a guessed 3-edge path the odd construction builds eight tours.  Taking
the path from an optimal tour is the case the guarantee rests on, so this
script does exactly that instead of trying every path.
"""

from difftsp import exact_tour, tour_odd
from difftsp.core import total_length
from difftsp.generate import random_instance
from difftsp.tour_odd import inner_construction, reference_covers

inst = random_instance(17, "uniform:0:50", seed=8002)
opt = exact_tour(inst, "min")
wor = exact_tour(inst, "max").length
guess = opt.tour[:4]
print("guessed path", guess)

out = inner_construction(inst, guess, audit=True)
lengths = [total_length(F, inst) for F in out.candidates]
print("candidate lengths", lengths)
print("8 min =", 8 * min(lengths), "<= 6 opt + 2 wor =", 6 * opt.length + 2 * wor)

if out.ext is not None:
    ctx = out.ext.ctx
    print("cycle through the path", ctx.Cstar, "second cycle", ctx.Cstarstar)
    print("first edges f, f', shared end q:", ctx.f, ctx.fprime, ctx.q)
    print("closing cases (plain, primed):", out.ext.plain.case, out.ext.primed.case)
    U, Up = reference_covers(opt.tour, guess)
    print("l(T), l(U):", total_length(ctx.T, inst), total_length(U, inst))
    print("l(T'), l(U'):", total_length(ctx.Tprime, inst), total_length(Up, inst))

# the same through the public entry point; full mode tries every path and takes minutes
res = tour_odd(inst, mode="fixed", paths=[guess, opt.tour[5:9]])
print("fixed mode:", res.length, "from", res.guesses, "guesses")

# below 17 vertices the exact solver answers directly
small = random_instance(13, seed=2)
print("n=13:", tour_odd(small).length, "==", exact_tour(small).length)
