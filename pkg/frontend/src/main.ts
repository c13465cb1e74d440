import { ApiClient } from './api.js';
import { mount } from './render.js';
import { Workbench } from './state.js';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

const bench = new Workbench(new ApiClient());
mount(root, bench);
void bench.refresh();
