"""Every operator identity the package relies on, checked at one disk point.

Run with an optional argument "re,im" for the point (default 0.5).
"""
import sys
import warnings

from diskops import verify as vf
from diskops.cli import parse_complex
from diskops.errors import SymbolAliasWarning

warnings.simplefilter("ignore", SymbolAliasWarning)

a = parse_complex(sys.argv[1]) if len(sys.argv) > 1 else 0.5
for c in vf.run_all(a, 96):
    print(f"{'ok ' if c.passed else 'BAD'} {c.residual:9.1e}  {c.name}")
