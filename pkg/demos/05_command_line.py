"""
The command-line tool
=====================

Every library operation is also a ``lerfkit`` subcommand working on small
text files.  This script writes a problem file, separates, and verifies the
certificate the same way a shell session would.

Run with ``python demos/05_command_line.py``.
"""

import re
import tempfile
from pathlib import Path

from lerfkit.cli import main

work = Path(tempfile.mkdtemp())
problem = work / "mirror.txt"
problem.write_text("""\
[double]
a b
ab
[subgroup]
a
b
[element]
a'
""")

# lerfkit separate-double mirror.txt -o mirror.cert --emit both
status = main(["separate-double", str(problem), "-o", str(work / "mirror.cert"), "--emit", "both"])
print("exit status", status)
print((work / "mirror.cert").read_text().splitlines()[-3:])
print("dot file:", (work / "mirror.cert.dot").exists())

# lerfkit verify mirror.cert
print("verify exit status", main(["verify", str(work / "mirror.cert")]))

# a tampered certificate fails with the first broken check
bad = work / "bad.cert"
bad.write_text(re.sub(r"^witness_end \d+$", "witness_end 0", (work / "mirror.cert").read_text(), flags=re.M))
print("tampered exit status", main(["verify", str(bad)]))

# an element of the subgroup gives exit status 1
(work / "member.txt").write_text(problem.read_text().replace("a'\n", "a'b'\n"))
print("member exit status", main(["separate-double", str(work / "member.txt")]))
