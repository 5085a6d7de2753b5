# -*- coding: utf-8 -*-

''' Evaluation of independent tasks (e.g. sweep grid points), either in-process or
    spread over consumer processes.
'''

import logging
import traceback
import multiprocess as mp

from ..utils import logger, countStr


class Task:
    ''' Indexed call to a function, returning its index along with its outcome. '''

    def __init__(self, index, func, args, kwargs, loglevel):
        self.index = index
        self.func = func
        self.args = args
        self.kwargs = kwargs
        self.loglevel = loglevel

    def __call__(self):
        logger.setLevel(self.loglevel)
        try:
            return self.index, self.func(*self.args, **self.kwargs), None
        except Exception as err:
            return self.index, None, (err, traceback.format_exc())


class Consumer(mp.Process):
    ''' Process executing tasks from an input queue until it receives None, and
        putting their outcomes in an output queue.
    '''

    def __init__(self, tasks, outcomes):
        super().__init__()
        self.tasks = tasks
        self.outcomes = outcomes

    def run(self):
        logger.debug('%s started', self.name)
        for task in iter(self.tasks.get, None):
            self.outcomes.put(task())
        logger.debug('%s exiting', self.name)


class Batch:
    ''' Batch of calls to a single function with varying arguments.

        Outputs are returned in queue order whatever the execution mode. An exception
        raised by any call is re-raised in the calling process.
    '''

    def __init__(self, func, queue):
        ''' Constructor.

            :param func: function object (picklable by dill in parallel mode)
            :param queue: list of argument lists, or of (args, kwargs) tuples
        '''
        self.func = func
        self.queue = queue

    def __len__(self):
        return len(self.queue)

    @staticmethod
    def resolve(params):
        if isinstance(params, tuple):
            return params
        return list(params), {}

    def tasks(self, loglevel):
        return [Task(i, self.func, *self.resolve(params), loglevel)
                for i, params in enumerate(self.queue)]

    def nConsumers(self):
        return min(mp.cpu_count(), len(self))

    def runParallel(self, loglevel):
        tasks, outcomes = mp.Queue(), mp.Queue()
        consumers = [Consumer(tasks, outcomes) for _ in range(self.nConsumers())]
        logger.debug('dispatching %s over %s', countStr(len(self), 'task'),
                     countStr(len(consumers), 'process'))
        for c in consumers:
            c.start()
        for task in self.tasks(loglevel):
            tasks.put(task)
        for _ in consumers:
            tasks.put(None)
        results = [outcomes.get() for _ in range(len(self))]
        for c in consumers:
            c.join()
        tasks.close()
        outcomes.close()
        return sorted(results, key=lambda x: x[0])

    def run(self, mpi=False, loglevel=logging.INFO):
        ''' Run all calls and return their outputs in queue order.

            :param mpi: whether to spread calls over consumer processes
            :param loglevel: logging level of consumer processes
            :return: list of outputs
        '''
        if not mpi or len(self) < 2:
            return [self.func(*args, **kwargs) for args, kwargs in map(self.resolve, self.queue)]
        outputs = []
        for index, out, failure in self.runParallel(loglevel):
            if failure is not None:
                err, tb = failure
                logger.error('task %d failed:\n%s', index, tb)
                raise err
            outputs.append(out)
        return outputs
