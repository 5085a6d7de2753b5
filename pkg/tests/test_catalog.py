# -*- coding: utf-8 -*-

''' Test catalog loading, validation and modality filtering. '''

import io
import os
import tempfile
import json
import numpy as np

from PyESS.core import *
from PyESS.report import renderCatalog
from PyESS.utils import logger
from PyESS.test import TestBase, randomCatalog


def entry(tid='X', **kwargs):
    ''' Valid catalog entry, with some fields replaced. '''
    d = {
        'id': tid,
        'name': f'technique {tid}',
        'family': 'feature-attribution',
        'modalities': ['tabular'],
        'properties': {
            'auditability': 3, 'traceability': 4, 'comprehensibility': 3,
            'actionability': 3, 'fidelity': 5, 'debuggability': 5, 'efficiency': 4},
        'latency': {'mode': 'online', 'estimate_ms': 50}
    }
    d.update(kwargs)
    return d


def document(*entries):
    return json.dumps({'techniques': list(entries)})


def expectValidationError(source, field, owner):
    try:
        loadCatalog(source)
    except ValidationError as err:
        assert err.field == field, f'unexpected field: {err}'
        assert err.owner == owner, f'unexpected owner: {err}'
        assert field in str(err) and owner in str(err)
        logger.debug('%s: OK', err)
        return
    raise AssertionError(f'{field} error not detected')


class TestCatalog(TestBase):

    def test_builtin(self, is_profiled=False):
        logger.info('Test: built-in catalog')
        catalog = builtinPaperCatalog()
        assert len(catalog) == 5
        assert catalog.ids == ('SHAP', 'LIME', 'CF', 'RULE', 'PROTO')
        assert catalog.names()['CF'] == 'Counterfactuals'
        assert catalog.get('RULE').properties.astuple() == (5, 5, 3, 2, 4, 4, 2)
        assert catalog.get('SHAP').properties.astuple() == (3, 4, 3, 3, 5, 5, 4)
        cf = catalog.get('CF').latency
        assert cf.mode is LatencyMode.ONLINE and cf.estimate_ms == 100.
        assert not catalog.get('RULE').latency.is_online
        assert catalog.get('RULE').latency.estimate_ms is None
        assert all(t.modalities == ('tabular',) for t in catalog)

    def test_data_file(self, is_profiled=False):
        logger.info('Test: shipped catalog document')
        with open(PAPER_CATALOG_FILE, 'r', encoding='utf-8') as fh:
            doc = json.load(fh)
        catalog = self.execute(builtinPaperCatalog, is_profiled)
        assert [d['id'] for d in doc['techniques']] == list(catalog.ids)
        assert catalogToDict(catalog) == doc
        assert catalog.get('SHAP').calibrated_axes == {'developer': 4.7}
        assert all(t.calibrated_axes is None for t in catalog if t.id != 'SHAP')

        # Independent loads give equal, distinct objects
        other = builtinPaperCatalog()
        assert other == catalog and other is not catalog

    def test_load(self, is_profiled=False):
        logger.info('Test: catalog loading')
        catalog = loadCatalog(document(entry('A'), entry('B', notes='some notes')))
        assert catalog.ids == ('A', 'B')
        assert catalog.get('B').notes == 'some notes'
        assert catalog.get('A').properties.efficiency == 4.

        # readable stream
        assert loadCatalog(io.StringIO(document(entry('A')))).ids == ('A',)

        # empty technique list
        assert len(loadCatalog(document())) == 0

        # fractional ratings
        props = dict(entry()['properties'], fidelity=4.5)
        assert loadCatalog(document(entry(properties=props)))[0].properties.fidelity == 4.5

        # calibrated axis scores
        t = loadCatalog(document(entry(calibrated_axes={'user': 2.5})))[0]
        assert t.calibrated_axes == {'user': 2.5}
        try:
            loadCatalog(document(entry(calibrated_axes={'user': 5.5})))
        except ValidationError as err:
            assert err.field == 'calibrated_axes.user'
        else:
            raise AssertionError('out of range calibrated score not detected')

        try:
            catalog.get('Z')
        except KeyError:
            logger.debug('unknown identifier: OK')
        else:
            raise AssertionError('unknown identifier not detected')

    def test_validation(self, is_profiled=False):
        logger.info('Test: catalog validation errors')
        props = dict(entry()['properties'], auditability=6)
        expectValidationError(
            document(entry('SHAP', properties=props)), 'properties.auditability', 'SHAP')
        props = dict(entry()['properties'], fidelity=0.5)
        expectValidationError(
            document(entry('A'), entry('LIME', properties=props)), 'properties.fidelity', 'LIME')
        props = {k: v for k, v in entry()['properties'].items() if k != 'efficiency'}
        expectValidationError(
            document(entry('CF', properties=props)), 'properties.efficiency', 'CF')
        expectValidationError(document(entry('A'), entry('A')), 'id', 'A')
        expectValidationError(
            document(entry('CF', latency={'mode': 'online'})), 'latency.estimate_ms', 'CF')
        expectValidationError(
            document(entry('RULE', latency={'mode': 'offline_only', 'estimate_ms': 10})),
            'latency.estimate_ms', 'RULE')
        expectValidationError(
            document(entry('RULE', latency={'mode': 'batch'})), 'latency.mode', 'RULE')
        expectValidationError(
            document(entry('PROTO', modalities=[])), 'modalities', 'PROTO')
        props = dict(entry()['properties'], novelty=3)
        expectValidationError(
            document(entry('PROTO', properties=props)), 'properties.novelty', 'PROTO')

    def test_parse_errors(self, is_profiled=False):
        logger.info('Test: malformed catalog documents')
        for source in ['{"techniques": [', 'techniques: []', '']:
            try:
                loadCatalog(source)
            except ParseError as err:
                logger.debug('%s: OK', err)
            else:
                raise AssertionError(f'malformed document not detected: {source!r}')

        # Non UTF-8 bytes, from a stream or a file
        for raw in [b'\xff\xfe{"techniques": []}', b'{"techniques": [], "x": "\xe9"}']:
            with tempfile.TemporaryDirectory() as tmpdir:
                fpath = os.path.join(tmpdir, 'catalog.json')
                with open(fpath, 'wb') as fh:
                    fh.write(raw)
                stream = io.TextIOWrapper(io.BytesIO(raw), encoding='utf-8')
                for load, source in [
                        (loadCatalog, stream), (loadCatalogFile, fpath), (loadScenarioFile, fpath)]:
                    try:
                        load(source)
                    except ParseError as err:
                        assert 'UTF-8' in str(err)
                        logger.debug('%s: OK', err)
                    else:
                        raise AssertionError(f'undecodable document not detected: {raw!r}')

    def test_filter(self, is_profiled=False):
        logger.info('Test: modality filtering')
        catalog = builtinPaperCatalog()
        assert filterApplicable(catalog, 'tabular') == catalog
        assert len(filterApplicable(catalog, 'vision')) == 0
        multi = loadCatalog(document(
            entry('A', modalities=['tabular', 'text']), entry('B', modalities=['vision'])))
        assert filterApplicable(multi, 'text').ids == ('A',)
        rng = np.random.default_rng(0)
        for _ in range(100):
            c = randomCatalog(rng, int(rng.integers(0, 10)))
            sub = filterApplicable(c, 'tabular')
            assert len(sub) <= len(c)
            assert filterApplicable(sub, 'tabular') == sub

    def test_roundtrip(self, is_profiled=False):
        logger.info('Test: catalog document round-trip')
        catalog = builtinPaperCatalog()
        assert loadCatalog(renderCatalog(catalog)) == catalog
        rng = np.random.default_rng(1)
        for n in [0, 1, 7, 20]:
            c = randomCatalog(rng, n)
            assert loadCatalog(renderCatalog(c)) == c


if __name__ == '__main__':
    tester = TestCatalog()
    tester.main()
