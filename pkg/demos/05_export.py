"""Write the integer programming models as LP files for an external solver."""
import tempfile
from pathlib import Path

from antiband import export
from antiband.generators import example_grid
from antiband.mip_export import model_filename, read_lp

g = example_grid()
out = Path(tempfile.mkdtemp())
for name in ("flit", "f", "fek", "ssp", "gcp"):
    model = export(g, name, ub=4, k=2)
    target = model.write(out / model_filename(g.name, name))
    lp = read_lp(target.read_text())
    print(f"{target.name:<18}{len(lp.rows):>5} rows  {dict(sorted(model.stats.items()))}")

print("\nfirst lines of", model_filename(g.name, "fek"))
print("\n".join((out / model_filename(g.name, "fek")).read_text().splitlines()[:8]))
