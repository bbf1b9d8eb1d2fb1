# Grothendieck-Riemann-Roch on Sigma x J.
#
# L is the universal line bundle with c_1(L) = sum gamma_i phi_i.  Pushing
# (ch L)^2 (1 - Sigma)(1 - K/2) down to J gives ch of the extension bundle E.

from qcoh.jacobian import (
    VOLUME_CONVENTION,
    extension_chern_classes,
    grr_extension_chern_character,
    integrate_J,
    omega,
)

print(VOLUME_CONVENTION)
for g in range(1, 6):
    print(f"genus {g}: <omega^g, [J]> = {integrate_J(omega(g) ** g)}")

trace = []
ch = grr_extension_chern_character(3, trace)
print("\n".join(trace))

# Newton's identities recover c_i(E) = 4^i / i! omega^i.
for i, ci in enumerate(extension_chern_classes(3), start=1):
    print(f"c_{i}(E) =", ci)
