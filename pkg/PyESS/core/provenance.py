# -*- coding: utf-8 -*-

''' Ordered record of the pipeline stages, from catalog to recommendation. '''

import datetime
from dataclasses import dataclass, field

from ..utils import digest

STAGES = ('catalog', 'aggregation', 'adjustment', 'discretisation', 'selection',
          'recommendation')


@dataclass(frozen=True)
class ProvenanceRecord:
    stage: str
    inputs_digest: str
    parameters: dict
    outputs: dict
    timestamp: str = None

    def todict(self):
        d = {
            'stage': self.stage,
            'inputs_digest': self.inputs_digest,
            'parameters': self.parameters,
            'outputs': self.outputs
        }
        if self.timestamp is not None:
            d['timestamp'] = self.timestamp
        return d

    @classmethod
    def fromdict(cls, d):
        return cls(d['stage'], d['inputs_digest'], d['parameters'], d['outputs'],
                   d.get('timestamp'))


@dataclass
class ProvenanceTrail:
    ''' Stage records, each carrying the digest of the data it consumed. '''
    records: list = field(default_factory=list)
    timestamps: bool = False

    def record(self, stage, inputs, parameters, outputs):
        ''' Append a stage record.

            :param stage: stage name
            :param inputs: JSON-serializable stage inputs (digested, not stored)
            :param parameters: JSON-serializable stage parameters
            :param outputs: JSON-serializable stage outputs
        '''
        if stage not in STAGES:
            raise ValueError(f'unknown pipeline stage: "{stage}"')
        timestamp = None
        if self.timestamps:
            timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
        rec = ProvenanceRecord(stage, digest(inputs), parameters, outputs, timestamp)
        self.records.append(rec)
        return rec

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, stage):
        for rec in self.records:
            if rec.stage == stage:
                return rec
        raise KeyError(f'no "{stage}" record in provenance trail')

    @property
    def stages(self):
        return tuple(rec.stage for rec in self.records)

    def todict(self):
        return [rec.todict() for rec in self.records]

    @classmethod
    def fromdict(cls, records):
        trail = cls([ProvenanceRecord.fromdict(d) for d in records])
        trail.timestamps = any(rec.timestamp is not None for rec in trail.records)
        return trail
