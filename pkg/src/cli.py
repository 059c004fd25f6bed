import json
import logging
import sys

import click

from src.config import Config
from src.errors import EmptyComposition, PreconditionError, cli_errors
from src.gh import distortion, gh_en_formula, gh_en_oracle, oracle_feasibility
from src.graev import (concat, graev_distance, graev_norm_bruteforce, graev_norm_dp, invert_word,
                       reduce_word)
from src.homog import (check_k_bounds, hausdorff_distance, lower_bound_certificate, nu_search,
                       phi_of_word, singletons, weight_k)
from src.katetov import (build_approximant, homogeneity_check, injectivity_check, is_katetov,
                         iso_group, kappa_extend, realize_one_point)
from src.loaders import (from_file, instance_from_dict, katetov_from_dict, load_json,
                         matrix_from_dict, relation_on_k_from_dict, relation_word_from_dict,
                         word_from_dict)
from src.metric_core import amalgam, shortest_path_completion, validate_space
from src.models.space import FiniteMetricSpace, PartialSpec
from src.models.theta import BiKatetovMatrix
from src.models.words import format_word, parse_word
from src.relations import H_of, Hinv_of, enumerate_K
from src.selftest import REFERENCES, SUITES, label, run_all
from src.semigroup import (classify_idempotents, enumerate_theta, greatest_idempotent,
                           idempotent_bF, is_invertible, product, star)

logger = logging.getLogger(__name__)


def frac(n, q):
    return f'{int(n)}/{int(q)}'


def matrix_payload(array, q):
    return [[frac(v, q) for v in row] for row in array]


def matrix_text(names, array, q):
    width = max([len(n) for n in names] + [len(frac(q, q))])
    lines = [' ' * width + ' ' + ' '.join(n.rjust(width) for n in names)]
    for name, row in zip(names, array):
        lines.append(name.rjust(width) + ' ' + ' '.join(frac(v, q).rjust(width) for v in row))
    return '\n'.join(lines)


def space_payload(space):
    return {'points': list(space.points), 'denominator': space.denominator,
            'dist': matrix_payload(space.dist, space.denominator)}


def emit(payload, human):
    ctx = click.get_current_context()
    if ctx.find_root().obj.get('json'):
        click.echo(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        click.echo(human)


def read_space(path):
    return FiniteMetricSpace.from_dict(load_json(path))


def emit_space(space, header=None):
    text = matrix_text(space.points, space.dist, space.denominator)
    emit(space_payload(space), f'{header}\n{text}' if header else text)


def emit_matrix(f, header=None):
    text = matrix_text(f.base.points, f.entries, f.base.denominator)
    emit({'denominator': f.base.denominator, 'points': list(f.base.points),
          'entries': matrix_payload(f.entries, f.base.denominator)},
         f'{header}\n{text}' if header else text)


def relation_text(pairs):
    return '{' + ', '.join(f'({x},{y})' for x, y in sorted(pairs)) + '}'


@click.group()
@click.option('--json', 'as_json', is_flag=True, help='Saída legível por máquina')
@click.pass_context
def cli(ctx, as_json):
    """Espaços métricos finitos, Θ, seminormas de Graev e distância GH enumerada"""
    logging.basicConfig(level=getattr(logging, Config.LOG_LEVEL.upper(), logging.WARNING))
    ctx.obj = {'json': as_json}


@cli.command()
@click.argument('path', type=click.Path())
@cli_errors
def validate(path):
    """Valida um arquivo de espaço"""
    report = validate_space(read_space(path))
    lines = ['valid'] if report.ok else ['invalid'] + [str(v) for v in report.violations]
    emit(report.to_dict(), '\n'.join(lines))
    if not report.ok:
        raise click.exceptions.Exit(1)


@cli.command()
@click.argument('path', type=click.Path())
@cli_errors
def complete(path):
    """Completa uma especificação parcial por caminhos mínimos"""
    emit_space(shortest_path_completion(PartialSpec.from_dict(load_json(path))))


@cli.command('amalgam')
@click.argument('x_path', type=click.Path())
@click.argument('y_path', type=click.Path())
@click.option('--glue', multiple=True, help='Par x=y (repetível)')
@cli_errors
def amalgam_cmd(x_path, y_path, glue):
    """Amálgama de dois espaços colados por pares x=y"""
    mapping = {}
    for item in glue:
        if '=' not in item:
            raise PreconditionError(f'Colagem inválida: {item!r} (use x=y)')
        x, y = item.split('=', 1)
        mapping[x] = y
    emit_space(amalgam(read_space(x_path), read_space(y_path), mapping))


@cli.group()
def katetov():
    """Funções de Katětov"""


@katetov.command('check')
@click.argument('path', type=click.Path())
@cli_errors
def katetov_check(path):
    f = from_file(katetov_from_dict, path)
    result = is_katetov(f.base, f.support, f.values)
    human = 'katetov' if result.ok else f'not katetov: {result.witness} ({result.reason})'
    emit({'katetov': result.ok, 'witness': list(result.witness or []), 'reason': result.reason},
         human)


@katetov.command('extend')
@click.argument('path', type=click.Path())
@cli_errors
def katetov_extend(path):
    f = from_file(katetov_from_dict, path)
    g = kappa_extend(f.base, f)
    q = f.base.denominator
    emit({p: frac(v, q) for p, v in zip(g.support, g.values)},
         '\n'.join(f'{p} {frac(v, q)}' for p, v in zip(g.support, g.values)))


@katetov.command('realize')
@click.argument('path', type=click.Path())
@click.option('--name', default='p', show_default=True)
@cli_errors
def katetov_realize(path, name):
    f = from_file(katetov_from_dict, path)
    result = realize_one_point(f.base, kappa_extend(f.base, f), name)
    header = f'ponto {result.point}'
    if result.identified:
        header += f' (identificado com {", ".join(result.identified)})'
    payload = space_payload(result.space)
    payload['identified'] = list(result.identified)
    emit(payload, header + '\n' + matrix_text(result.space.points, result.space.dist,
                                              result.space.denominator))


@cli.group()
def approximant():
    """Aproximantes finitos por extensões de um ponto"""


@approximant.command('build')
@click.argument('path', type=click.Path())
@click.option('--subset', 's', type=int, default=1, show_default=True)
@click.option('--grid', type=int, default=None)
@click.option('--cap', type=int, default=64, show_default=True)
@click.option('--strategy', type=click.Choice(['katetov', 'random']), default='katetov',
              show_default=True)
@click.option('--seed', 'rng_seed', type=int, default=0, show_default=True)
@cli_errors
def approximant_build(path, s, grid, cap, strategy, rng_seed):
    result = build_approximant(read_space(path), s, grid, cap, strategy, rng_seed)
    payload = {'status': result.status, 'rounds': result.rounds, 'added': list(result.added),
               'space': result.space.to_dict()}
    emit(payload, f'{result.status}: {result.space.size} pontos em {result.rounds} rodadas\n'
                  + matrix_text(result.space.points, result.space.dist, result.space.denominator))


@approximant.command('verify')
@click.argument('path', type=click.Path())
@click.option('--subset', 's', type=int, default=1, show_default=True)
@click.option('--grid', type=int, default=None)
@click.option('--homog', 'homog_size', type=int, default=None, help='Verifica homogeneidade até este tamanho')
@click.option('--max-points', type=int, default=None, help='Limite do grupo de isometrias na homogeneidade')
@cli_errors
def approximant_verify(path, s, grid, homog_size, max_points):
    space = read_space(path)
    report = injectivity_check(space, s, grid)
    lines = [f'{report.checked} funções, {len(report.unrealized)} sem realização']
    lines += [f'  sem realização: {f}' for f in report.unrealized]
    payload = {'checked': report.checked, 'unrealized': [
        {'support': list(f.support), 'values': [frac(v, f.base.denominator) for v in f.values]}
        for f in report.unrealized]}
    if homog_size is not None:
        homog = homogeneity_check(space, homog_size, max_points)
        payload['homogeneous'] = homog.ok
        payload['failures'] = [[list(a), list(b)] for a, b in homog.failures]
        lines.append(f'homogeneidade até {homog_size}: {"ok" if homog.ok else "falhou"}')
        lines += [f'  não se estende: {a} -> {b}' for a, b in homog.failures]
    emit(payload, '\n'.join(lines))


@cli.command()
@click.argument('path', type=click.Path())
@click.option('--max-points', type=int, default=None)
@cli_errors
def isogroup(path, max_points):
    """Lista as isometrias do espaço"""
    space = read_space(path)
    group = iso_group(space, max_points)
    maps = [{space.points[i]: space.points[j] for i, j in enumerate(g)} for g in group]
    emit({'order': len(group), 'isometries': maps},
         '\n'.join([f'ordem {len(group)}'] + [' '.join(f'{k}->{v}' for k, v in m.items()) for m in maps]))


@cli.group()
def theta():
    """Semigrupo Θ de matrizes bi-Katětov"""


def read_matrix(path):
    return from_file(matrix_from_dict, path)


@theta.command('product')
@click.argument('a', type=click.Path())
@click.argument('b', type=click.Path())
@cli_errors
def theta_product(a, b):
    emit_matrix(product(read_matrix(a), read_matrix(b)))


@theta.command('star')
@click.argument('a', type=click.Path())
@cli_errors
def theta_star(a):
    emit_matrix(star(read_matrix(a)))


@theta.command('bf')
@click.argument('path', type=click.Path())
@click.option('--points', default='', help='F como lista separada por vírgulas')
@cli_errors
def theta_bf(path, points):
    subset = [p for p in points.split(',') if p]
    emit_matrix(idempotent_bF(read_space(path), subset))


@theta.command('classify')
@click.argument('path', type=click.Path())
@click.option('--grid', type=int, default=None)
@cli_errors
def theta_classify(path, grid):
    found = classify_idempotents(read_space(path), grid)
    q = found[0][0].base.denominator
    payload = [{'F': list(subset), 'entries': matrix_payload(p.entries, q)} for p, subset in found]
    lines = [f'{len(found)} idempotentes']
    for p, subset in found:
        lines.append(f'F = {{{", ".join(subset)}}}')
        lines.append(matrix_text(p.base.points, p.entries, q))
    emit(payload, '\n'.join(lines))


@theta.command('greatest')
@click.argument('paths', nargs=-1, required=True, type=click.Path())
@cli_errors
def theta_greatest(paths):
    result = greatest_idempotent([read_matrix(p) for p in paths])
    if result is None:
        emit(None, 'none')
    else:
        emit_matrix(result)


@theta.command('invert')
@click.argument('a', type=click.Path())
@cli_errors
def theta_invert(a):
    f = read_matrix(a)
    phi = is_invertible(f)
    if phi is None:
        emit(None, 'none')
    else:
        mapping = {f.base.points[i]: f.base.points[j] for i, j in enumerate(phi)}
        emit(mapping, ' '.join(f'{k}->{v}' for k, v in mapping.items()))


@cli.group()
def graev():
    """Seminormas de Graev"""


@graev.command('norm')
@click.argument('path', type=click.Path())
@click.option('--oracle', is_flag=True, help='Força a enumeração de pareamentos')
@cli_errors
def graev_norm(path, oracle):
    alphabet, word = from_file(word_from_dict, path)
    value = graev_norm_bruteforce(word, alphabet) if oracle else graev_norm_dp(word, alphabet)
    emit({'value': frac(value, alphabet.denominator)}, frac(value, alphabet.denominator))


@graev.command('dist')
@click.argument('path', type=click.Path())
@click.option('--other', default=None, help='Segunda palavra (padrão: campo "other")')
@click.option('--oracle', is_flag=True)
@cli_errors
def graev_dist(path, other, oracle):
    data = load_json(path)
    alphabet, u = from_file(word_from_dict, path)
    v = alphabet.check_word(parse_word(other if other is not None else data.get('other', '')))
    if oracle:
        value = graev_norm_bruteforce(reduce_word(concat(invert_word(u), v)), alphabet)
    else:
        value = graev_distance(u, v, alphabet)
    emit({'value': frac(value, alphabet.denominator)}, frac(value, alphabet.denominator))


@cli.group()
def homog():
    """Relações de isometria parcial e ν truncado"""


def _relation_name(named):
    reverse = {r: name for name, r in named.items()}
    return lambda r: reverse.get(r, str(r))


@homog.command('phi')
@click.argument('path', type=click.Path())
@cli_errors
def homog_phi(path):
    space, _, word = from_file(relation_word_from_dict, path)
    image = phi_of_word(space, word)
    emit({'pairs': sorted([list(p) for p in image])}, relation_text(image))


@homog.command('nu')
@click.argument('path', type=click.Path())
@click.option('--from', 'a', required=True)
@click.option('--to', 'b', required=True)
@click.option('--max-len', type=int, default=1, show_default=True)
@click.option('--gens', type=click.Path(), default=None, help='Arquivo de palavra de relações')
@cli_errors
def homog_nu(path, a, b, max_len, gens):
    space = read_space(path)
    if gens:
        _, named, _ = from_file(relation_word_from_dict, gens)
        generators = list(named.values())
        namer = _relation_name(named)
    else:
        generators = singletons(space)
        namer = str
    result = nu_search(space, a, b, generators, max_len)
    q = space.denominator
    if result.value is None:
        emit({'value': None, 'examined': result.examined}, 'none')
        return
    witness = format_word(result.witness, namer)
    emit({'value': frac(result.value, q), 'witness': witness, 'examined': result.examined},
         f'{frac(result.value, q)}  ({witness})')


@homog.command('lemma42')
@click.argument('path', type=click.Path())
@click.option('--from', 'a', required=True)
@click.option('--to', 'b', required=True)
@cli_errors
def homog_certify(path, a, b):
    """Cadeia de encurtamentos que certifica p(w) >= d(a, b)"""
    space, named, word = from_file(relation_word_from_dict, path)
    namer = _relation_name(named)
    q = space.denominator
    chain = lower_bound_certificate(space, word, a, b)
    emit({'chain': [{'word': format_word(w, namer), 'value': frac(v, q)} for w, v in chain],
          'distance': frac(space.d(a, b), q)},
         '\n'.join([f'{frac(v, q)}  {format_word(w, namer)}' for w, v in chain]
                   + [f'd({a},{b}) = {frac(space.d(a, b), q)}']))


@homog.command('lemma43')
@click.argument('path', type=click.Path())
@click.option('--case', 'case', type=click.IntRange(1, 3), required=True)
@click.option('--signs', default='1,1', show_default=True)
@cli_errors
def homog_kbounds(path, case, signs):
    """Verifica a cota de k para as relações do arquivo, na ordem declarada"""
    space, named, _ = from_file(relation_word_from_dict, path)
    relations = list(named.values())
    try:
        parsed = tuple(int(s) for s in signs.split(','))
    except ValueError:
        raise PreconditionError(f'Sinais inválidos: {signs!r}')
    q = space.denominator
    try:
        holds = check_k_bounds(space, case, relations, parsed)
    except EmptyComposition:
        emit({'skipped': True}, 'skip: composição vazia')
        return
    details = {'k': [frac(weight_k(space, r), q) for r in relations]}
    if len(relations) >= 2:
        details['d_H'] = frac(hausdorff_distance(space, relations[0], relations[-1]), q)
    emit({'holds': holds, **details}, 'holds' if holds else 'violated')
    if not holds:
        raise click.exceptions.Exit(3)


# Nomes descritivos para os mesmos comandos
homog.add_command(homog_certify, 'certify')
homog.add_command(homog_kbounds, 'kbounds')


@cli.group()
def gh():
    """Distância de Gromov-Hausdorff enumerada"""


@gh.command('dist')
@click.argument('path', type=click.Path())
@click.option('--oracle', is_flag=True, help='Usa a varredura de viabilidade')
@cli_errors
def gh_dist(path, oracle):
    inst = from_file(instance_from_dict, path)
    value = gh_en_oracle(inst) if oracle else gh_en_formula(inst)
    eps, pair = distortion(inst)
    payload = {'value': str(value), 'epsilon': frac(eps, inst.q)}
    if oracle and eps > 0:
        below = oracle_feasibility(inst, eps - 1)
        payload['contracted_below'] = list(below.contracted or [])
    emit(payload, str(value))


@cli.group()
def relations():
    """Relações sobre o espaço K de funções não-expansivas"""


@relations.command('k')
@click.argument('path', type=click.Path())
@click.option('--grid', type=int, default=None)
@cli_errors
def relations_k(path, grid):
    carrier = enumerate_K(read_space(path), grid)
    q = carrier.base.denominator
    rows = [[frac(v, q) for v in row] for row in carrier.members]
    emit({'points': list(carrier.base.points), 'members': rows},
         '\n'.join([f'{carrier.size} membros'] + [' '.join(r) for r in rows]))


@relations.command('h')
@click.argument('path', type=click.Path())
@cli_errors
def relations_h(path):
    emit_matrix(H_of(from_file(relation_on_k_from_dict, path)))


@relations.command('hinv')
@click.argument('path', type=click.Path())
@click.option('--grid', type=int, default=None)
@cli_errors
def relations_hinv(path, grid):
    f = read_matrix(path)
    carrier = enumerate_K(f.base, grid)
    if carrier.base != f.base:
        raise PreconditionError('A grade pedida muda o denominador da matriz')
    r = Hinv_of(carrier, f)
    emit(r.to_dict(), '\n'.join([f'{len(r.pairs)} pares'] + [f'{i} {j}' for i, j in r.pairs]))


@relations.command('roundtrip')
@click.argument('path', type=click.Path())
@cli_errors
def relations_roundtrip(path):
    """H(H⁻¹(f)) = f para toda f bi-Katětov da grade"""
    space = read_space(path)
    carrier = enumerate_K(space)
    checked = failed = 0
    for batch in enumerate_theta(space):
        for a in batch:
            f = BiKatetovMatrix.from_array(space, a)
            checked += 1
            failed += int(H_of(Hinv_of(carrier, f)) != f)
    emit({'checked': checked, 'failed': failed}, f'{checked} matrizes, {failed} falhas')
    if failed:
        raise click.exceptions.Exit(3)


@cli.command()
@click.option('--suite', 'suites', multiple=True, type=click.Choice(list(SUITES)))
@cli_errors
def selftest(suites):
    """Executa as suítes exaustivas em casos pequenos"""
    results = run_all(suites or None)
    emit([{'suite': n, 'reference': REFERENCES[n], 'pass': ok, 'detail': d} for n, ok, d in results],
         '\n'.join(f'{"PASS" if ok else "FAIL"} {label(n)}: {d}' for n, ok, d in results))
    if not all(ok for _, ok, _ in results):
        raise click.exceptions.Exit(3)


def run(argv=None):
    """Executa a CLI e devolve o código de saída (uso incorreto = 1)"""
    try:
        rv = cli.main(args=argv, prog_name='urysohn', standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == '__main__':
    sys.exit(run())
