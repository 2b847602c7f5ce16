"""Validate the table of exceptional germs row by row."""

from singkit.catalog import load_catalog

cat = load_catalog()
for v in cat.validate():
    print("\n".join(v.lines()))
    print()
