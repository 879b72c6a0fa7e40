"""Graphviz DOT output. Objects become clusters with one sub-cluster per class;
morphisms become edges between element nodes."""

import json
from typing import Dict, List

from .categories import Diagram
from .morphisms import Morphism
from .objects import PartitionedSet
from .textformat import Workspace
from .tokens import format_token


def _q(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _node(obj: str, e) -> str:
    return _q(f"{obj}:{format_token(e)}")


def _cluster(obj: str, X: PartitionedSet, indent: str = "  ") -> List[str]:
    lines = [f"{indent}subgraph {_q('cluster_' + obj)} {{", f"{indent}  label={_q(obj)};"]
    if not X.blocks:
        lines.append(f"{indent}  {_q(obj + ':empty')} [shape=point, style=invis];")
    for k, block in enumerate(X.blocks):
        lines.append(f"{indent}  subgraph {_q(f'cluster_{obj}_{k}')} {{")
        lines.append(f"{indent}    style=rounded; label=\"\";")
        for e in block:
            lines.append(f"{indent}    {_node(obj, e)} [label={_q(format_token(e))}];")
        lines.append(f"{indent}  }}")
    lines.append(f"{indent}}}")
    return lines


def _edges(name: str, src: str, tgt: str, m: Morphism, indent: str = "  ") -> List[str]:
    return [f"{indent}{_node(src, x)} -> {_node(tgt, y)} [label={_q(name)}];"
            for x, y in zip(m.source.elements, m.table)]


def render_graph(objects: Dict[str, PartitionedSet], morphisms: Dict[str, tuple],
                 title: str = "partset") -> str:
    """``morphisms`` maps a name to (source name, target name, morphism)."""
    lines = [f"digraph {_q(title)} {{", "  compound=true;", "  node [shape=circle];"]
    for name, X in objects.items():
        lines += _cluster(name, X)
    for name, (src, tgt, m) in morphisms.items():
        lines += _edges(name, src, tgt, m)
    lines.append("}")
    return "\n".join(lines) + "\n"


def object_to_dot(X: PartitionedSet, name: str = "X") -> str:
    return render_graph({name: X}, {}, name)


def morphism_to_dot(m: Morphism, name: str = "f", source: str = "X", target: str = "Y") -> str:
    if source == target:
        target = target + "'"
    return render_graph({source: m.source, target: m.target}, {name: (source, target, m)}, name)


def diagram_to_dot(D: Diagram, name: str = "D") -> str:
    objects = {f"{name}({format_token(c)})": D[c] for c in D.category.objects}
    morphisms = {}
    for n, (a, b) in D.category.arrows.items():
        morphisms[n] = (f"{name}({format_token(a)})", f"{name}({format_token(b)})", D.arrows[n])
    return render_graph(objects, morphisms, name)


def workspace_to_dot(ws: Workspace, title: str = "workspace") -> str:
    morphisms = {}
    for name, m in ws.morphisms.items():
        src, tgt = ws.refs[("morphism", name)]
        morphisms[name] = (src, tgt, m)
    return render_graph(dict(ws.objects), morphisms, title)
